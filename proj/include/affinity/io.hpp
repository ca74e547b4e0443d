#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "affinity/attributes.hpp"
#include "affinity/closeness.hpp"
#include "affinity/evaluate.hpp"
#include "affinity/graph.hpp"
#include "affinity/optimizer.hpp"
#include "affinity/similarity.hpp"

namespace affinity {

// Weights are serialized with 12 significant digits. Writing, re-reading and
// writing again is byte-stable.
std::string format_weight(double w);

// "id_u<TAB>id_v<TAB>weight" per edge, in edge-index order.
void write_relationship_file(const std::string& path, const Graph& graph,
                             const AffinityGraphs& aff, std::size_t m);

// Header "id_u<TAB>id_v<TAB><name>..." then one row per edge with all
// relationship weights.
void write_combined_file(const std::string& path, const Graph& graph,
                         const AffinityGraphs& aff,
                         const std::vector<std::string>& names);

// Reads a combined file back against the same graph; the header must carry
// exactly the configured relationship names and every edge must be covered.
AffinityGraphs read_combined_file(const std::string& path, const Graph& graph,
                                  const std::vector<std::string>& names);

// "m-name<TAB>id_i<TAB>id_j<TAB>f" in canonical order, for debugging the
// constrained pair generation.
void write_pairs_dump(std::ostream& out, const SimilarityPairs& pairs,
                      const Graph& graph,
                      const std::vector<std::string>& names);

// "id_u<TAB>id_v<TAB>rel,rel,..." lines. Unknown relationship names are
// parse errors; pairs that are not edges are collected and reported via
// UnknownLabelEdges; an empty file is a parse error.
LabelSet read_label_file(const std::string& path, const Graph& graph,
                         const std::vector<std::string>& names);

// Human-readable fit log. Wall-clock fields are masked when deterministic
// output is requested so reruns stay byte-identical.
void write_fit_report(std::ostream& out, const FitReport& report,
                      bool deterministic);

}  // namespace affinity

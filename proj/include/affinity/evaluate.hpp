#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "affinity/closeness.hpp"
#include "affinity/graph.hpp"

namespace affinity {

/// Per-edge boolean predictions, one bit per relationship.
struct PredictionSet {
  std::size_t relationship_count = 0;
  std::vector<std::uint8_t> predicted;  // [e * M + m]

  bool at(EdgeIndex e, std::size_t m) const {
    return predicted[std::size_t{e} * relationship_count + m] != 0;
  }
};

/// Gold relationship labels for a subset of edges.
struct LabelSet {
  struct Entry {
    EdgeIndex edge;
    std::vector<std::size_t> relationships;  // sorted
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
};

// An edge predicts relationship m when its weight reaches the threshold
// (inclusive, so theta = 0 marks everything).
PredictionSet threshold_predictions(const AffinityGraphs& aff,
                                    std::span<const double> thresholds);

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool no_predictions = false;  // nothing predicted; precision pinned to 0
  std::size_t tp = 0, fp = 0, fn = 0;
};

// Precision/recall/F1 for relationship m over the labeled edges only.
// Throws when the labels contain no positive for m.
PrfScore score_prf(const PredictionSet& predictions, const LabelSet& gold,
                   std::size_t m);

struct CoverageScore {
  double systematicness = 0.0;  // edges with any prediction / all edges
  double completeness = 0.0;    // edges with 2+ predictions / predicted edges
  std::size_t total_edges = 0;
  std::size_t profiled_edges = 0;
  std::size_t multi_edges = 0;
};

CoverageScore coverage(const PredictionSet& predictions, const Graph& graph);

}  // namespace affinity

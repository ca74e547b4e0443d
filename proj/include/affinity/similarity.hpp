#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "affinity/attributes.hpp"
#include "affinity/graph.hpp"

namespace affinity {

/// A node pair (i < j) whose attributes tie it to a relationship, with the
/// combined similarity score f in (0, 1].
struct ScoredPair {
  NodeIndex i;
  NodeIndex j;
  double f;
};

struct SimilarityPairs {
  std::vector<std::vector<ScoredPair>> per_relationship;

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& v : per_relationship) n += v.size();
    return n;
  }
};

// 1 when the sorted value-id sets intersect, else 0. Empty sets never match.
double categorical_similarity(std::span<const std::int32_t> a,
                              std::span<const std::int32_t> b);

// 1 - |a - b| / max_diff, clamped at 0; max_diff == 0 means every present
// pair is identical and scores 1. Non-finite input is rejected.
double numerical_similarity(double a, double b, double max_diff);

// Combines per-attribute scores with min, so one dissimilar attribute vetoes
// the pair. Empty input is rejected.
double combine_similarities(std::span<const double> scores);

// Combined score for one pair under relationship m: min over the
// relationship's attributes, 0 as soon as either node is missing a value.
double pair_similarity(const AttributeTable& table, std::size_t m,
                       NodeIndex i, NodeIndex j);

/// Materializes all constrained pairs (f > 0) per relationship, sorted by
/// (i, j). Candidate generation is output-sensitive: pairs sharing a value
/// on the first categorical attribute, or, for numerical-only relationships,
/// attributed pairs within graph distance k_max.
SimilarityPairs compute_similarity_pairs(const AttributeTable& table,
                                         const Graph& graph, int k_max);

}  // namespace affinity

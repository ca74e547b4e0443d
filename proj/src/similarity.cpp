#include "affinity/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace affinity {

double categorical_similarity(std::span<const std::int32_t> a,
                              std::span<const std::int32_t> b) {
  std::size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x] == b[y]) return 1.0;
    if (a[x] < b[y]) {
      ++x;
    } else {
      ++y;
    }
  }
  return 0.0;
}

double numerical_similarity(double a, double b, double max_diff) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(max_diff) ||
      max_diff < 0.0) {
    throw std::invalid_argument("numerical_similarity: non-finite input");
  }
  if (max_diff == 0.0) return 1.0;
  return std::max(0.0, 1.0 - std::abs(a - b) / max_diff);
}

double combine_similarities(std::span<const double> scores) {
  if (scores.empty()) {
    throw std::invalid_argument("combine_similarities: no scores");
  }
  return *std::min_element(scores.begin(), scores.end());
}

double pair_similarity(const AttributeTable& table, std::size_t m,
                       NodeIndex i, NodeIndex j) {
  double f = 1.0;
  for (std::size_t a = 0; a < table.attribute_count(m); ++a) {
    double s;
    if (table.attribute_type(m, a) == AttributeType::categorical) {
      s = categorical_similarity(table.categorical_values(m, a, i),
                                 table.categorical_values(m, a, j));
    } else {
      auto xi = table.numerical_value(m, a, i);
      auto xj = table.numerical_value(m, a, j);
      // missing on either side scores 0: absence is not evidence
      s = (xi && xj) ? numerical_similarity(*xi, *xj, table.max_difference(m, a))
                     : 0.0;
    }
    f = std::min(f, s);
    if (f == 0.0) break;
  }
  return f;
}

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  return (std::uint64_t{a} << 32) | b;
}

// Nodes within hop distance <= k_max of `source`; shortest paths are simple,
// so plain BFS matches what the path enumerator can reach.
void bfs_within(const Graph& graph, NodeIndex source, int k_max,
                std::vector<int>& depth, std::vector<NodeIndex>& reached) {
  reached.clear();
  std::queue<NodeIndex> queue;
  depth[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    NodeIndex u = queue.front();
    queue.pop();
    if (depth[u] == k_max) continue;
    for (const auto& nb : graph.neighbors(u)) {
      if (depth[nb.node] >= 0) continue;
      depth[nb.node] = depth[u] + 1;
      reached.push_back(nb.node);
      queue.push(nb.node);
    }
  }
  depth[source] = -1;
  for (NodeIndex v : reached) depth[v] = -1;  // reset for the next call
}

std::vector<std::uint64_t> categorical_candidates(const AttributeTable& table,
                                                  std::size_t m, std::size_t gate) {
  std::vector<std::uint64_t> keys;
  for (std::size_t v = 0; v < table.value_count(m, gate); ++v) {
    auto members = table.nodes_with_value(m, gate, static_cast<std::int32_t>(v));
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        keys.push_back(pair_key(members[x], members[y]));
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<std::uint64_t> numerical_candidates(const AttributeTable& table,
                                                const Graph& graph, std::size_t m,
                                                int k_max) {
  // No categorical column to gate on, so fall back to attributed pairs that
  // the path enumerator could actually connect.
  std::vector<NodeIndex> attributed;
  for (NodeIndex u = 0; u < graph.node_count(); ++u) {
    if (table.fully_attributed(m, u)) attributed.push_back(u);
  }
  std::vector<std::uint8_t> is_attributed(graph.node_count(), 0);
  for (NodeIndex u : attributed) is_attributed[u] = 1;

  std::vector<std::uint64_t> keys;
  std::vector<int> depth(graph.node_count(), -1);
  std::vector<NodeIndex> reached;
  for (NodeIndex u : attributed) {
    bfs_within(graph, u, k_max, depth, reached);
    for (NodeIndex v : reached) {
      if (v > u && is_attributed[v]) keys.push_back(pair_key(u, v));
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

SimilarityPairs compute_similarity_pairs(const AttributeTable& table,
                                         const Graph& graph, int k_max) {
  SimilarityPairs out;
  out.per_relationship.resize(table.relationship_count());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::ptrdiff_t mi = 0;
       mi < static_cast<std::ptrdiff_t>(table.relationship_count()); ++mi) {
    const std::size_t m = static_cast<std::size_t>(mi);
    std::ptrdiff_t gate = -1;
    for (std::size_t a = 0; a < table.attribute_count(m); ++a) {
      if (table.attribute_type(m, a) == AttributeType::categorical) {
        gate = static_cast<std::ptrdiff_t>(a);
        break;
      }
    }
    std::vector<std::uint64_t> keys =
        gate >= 0 ? categorical_candidates(table, m, static_cast<std::size_t>(gate))
                  : numerical_candidates(table, graph, m, k_max);

    auto& pairs = out.per_relationship[m];
    for (std::uint64_t key : keys) {
      NodeIndex i = static_cast<NodeIndex>(key >> 32);
      NodeIndex j = static_cast<NodeIndex>(key & 0xffffffffu);
      double f = pair_similarity(table, m, i, j);
      if (f > 0.0) pairs.push_back({i, j, f});
    }
    // keys were sorted, so pairs already come out in (i, j) order
  }

  return out;
}

}  // namespace affinity

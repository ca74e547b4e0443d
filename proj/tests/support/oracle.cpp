#include "oracle.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace oracle {

namespace {

void dfs_extend(const affinity::Graph& graph, affinity::NodeIndex target,
                int k_max, std::vector<affinity::NodeIndex>& walk,
                std::vector<char>& visited,
                std::vector<std::vector<affinity::NodeIndex>>& out) {
  const affinity::NodeIndex here = walk.back();
  if (here == target && walk.size() > 1) {
    out.push_back(walk);
    return;  // simple paths cannot revisit the target anyway
  }
  if (static_cast<int>(walk.size()) - 1 == k_max) return;
  for (const auto& [next, edge] : graph.neighbors(here)) {
    (void)edge;
    if (visited[next]) continue;
    visited[next] = 1;
    walk.push_back(next);
    dfs_extend(graph, target, k_max, walk, visited, out);
    walk.pop_back();
    visited[next] = 0;
  }
}

// Plain hop distances, matching the production candidate gate: a pair is in
// range when any walk connects it, attributed intermediates or not.
std::vector<int> hop_distances(const affinity::Graph& graph,
                               affinity::NodeIndex start, int k_max) {
  std::vector<int> dist(graph.node_count(), -1);
  dist[start] = 0;
  std::queue<affinity::NodeIndex> frontier;
  frontier.push(start);
  while (!frontier.empty()) {
    const affinity::NodeIndex u = frontier.front();
    frontier.pop();
    if (dist[u] == k_max) continue;
    for (const auto& [v, edge] : graph.neighbors(u)) {
      (void)edge;
      if (dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      frontier.push(v);
    }
  }
  return dist;
}

}  // namespace

std::vector<std::vector<affinity::NodeIndex>> brute_force_paths(
    const affinity::Graph& graph, affinity::NodeIndex i, affinity::NodeIndex j,
    int k_max) {
  if (graph.node_count() > 14)
    throw std::invalid_argument("brute_force_paths: graph too large for DFS");
  std::vector<std::vector<affinity::NodeIndex>> out;
  if (k_max <= 0) return out;
  std::vector<affinity::NodeIndex> walk{i};
  std::vector<char> visited(graph.node_count(), 0);
  visited[i] = 1;
  dfs_extend(graph, j, k_max, walk, visited, out);
  return out;
}

affinity::SimilarityPairs brute_force_pairs(const affinity::AttributeTable& table,
                                            const affinity::Graph& graph,
                                            int k_max) {
  affinity::SimilarityPairs out;
  out.per_relationship.resize(table.relationship_count());
  for (std::size_t m = 0; m < table.relationship_count(); ++m) {
    bool has_categorical = false;
    for (std::size_t a = 0; a < table.attribute_count(m); ++a)
      if (table.attribute_type(m, a) == affinity::AttributeType::categorical)
        has_categorical = true;
    for (affinity::NodeIndex i = 0; i + 1 < graph.node_count(); ++i) {
      std::vector<int> dist;
      if (!has_categorical && table.fully_attributed(m, i))
        dist = hop_distances(graph, i, k_max);
      for (affinity::NodeIndex j = i + 1; j < graph.node_count(); ++j) {
        if (!has_categorical) {
          if (dist.empty() || dist[j] < 0) continue;
        }
        const double f = affinity::pair_similarity(table, m, i, j);
        if (f > 0.0) out.per_relationship[m].push_back({i, j, f});
      }
    }
  }
  return out;
}

double finite_difference(const affinity::AffinityGraphs& aff,
                         const affinity::Graph& graph,
                         const affinity::SimilarityPairs& pairs,
                         const affinity::PairPathIndex& index,
                         const affinity::FitConfig& cfg, affinity::EdgeIndex e,
                         std::size_t m, double h) {
  (void)graph;
  const double base = aff.weight(e, m);
  if (base - h < aff.epsilon()) h = (base - aff.epsilon()) * 0.5;
  if (h <= 0.0)
    throw std::invalid_argument("finite_difference: weight sits on the floor");
  affinity::AffinityGraphs plus = aff;
  affinity::AffinityGraphs minus = aff;
  plus.set_weight(e, m, base + h);
  minus.set_weight(e, m, base - h);
  // Degrees stay frozen at the base point: copies keep the base snapshot.
  const double jp = affinity::log_likelihood_frozen(plus, pairs, index, cfg).value;
  const double jm = affinity::log_likelihood_frozen(minus, pairs, index, cfg).value;
  return (jp - jm) / (2.0 * h);
}

std::vector<std::vector<affinity::NodeIndex>> sorted_sequences(
    const std::vector<affinity::PathDescriptor>& paths) {
  std::vector<std::vector<affinity::NodeIndex>> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.nodes);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<affinity::NodeIndex>> sorted_sequences(
    std::vector<std::vector<affinity::NodeIndex>> sequences) {
  std::sort(sequences.begin(), sequences.end());
  return sequences;
}

affinity::Graph random_graph(std::size_t nodes, double edge_prob,
                             std::mt19937& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i + 1 < nodes; ++i)
      for (std::size_t j = i + 1; j < nodes; ++j)
        if (coin(rng) < edge_prob)
          edges.emplace_back("n" + std::to_string(i), "n" + std::to_string(j));
    if (edges.empty()) continue;
    return affinity::Graph::build(edges, nullptr);
  }
  throw std::runtime_error("random_graph: no edges after 100 attempts");
}

void randomize_weights(affinity::AffinityGraphs& aff, const affinity::Graph& graph,
                       std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  const std::size_t m_count = aff.relationship_count();
  std::vector<double> row(m_count);
  for (affinity::EdgeIndex e = 0; e < aff.edge_count(); ++e) {
    double total = 0.0;
    for (auto& x : row) total += (x = unit(rng));
    for (std::size_t m = 0; m < m_count; ++m)
      aff.set_weight(e, m, row[m] / total);
  }
  aff.refresh_degrees(graph);
}

affinity::SimilarityPairs random_pairs(const affinity::Graph& graph,
                                       std::size_t relationships,
                                       std::size_t per_relationship,
                                       std::mt19937& rng) {
  std::uniform_int_distribution<affinity::NodeIndex> pick(
      0, static_cast<affinity::NodeIndex>(graph.node_count() - 1));
  std::uniform_real_distribution<double> strength(0.05, 1.0);
  const std::size_t n = graph.node_count();
  per_relationship = std::min(per_relationship, n * (n - 1) / 2);
  affinity::SimilarityPairs out;
  out.per_relationship.resize(relationships);
  for (auto& list : out.per_relationship) {
    std::vector<std::pair<affinity::NodeIndex, affinity::NodeIndex>> used;
    while (list.size() < per_relationship) {
      affinity::NodeIndex i = pick(rng);
      affinity::NodeIndex j = pick(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      if (std::find(used.begin(), used.end(), std::make_pair(i, j)) != used.end())
        continue;
      used.emplace_back(i, j);
      list.push_back({i, j, strength(rng)});
    }
    std::sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
  }
  return out;
}

}  // namespace oracle

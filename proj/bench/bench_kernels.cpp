// Timing harness for the parallel kernels against their serial twins, plus
// the path cache. Prints one line per measurement; wall clock only, so run
// on a quiet machine.
#include <chrono>
#include <cstdio>
#include <random>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "affinity/closeness.hpp"
#include "affinity/graph.hpp"
#include "affinity/optimizer.hpp"
#include "affinity/pathfinder.hpp"
#include "affinity/similarity.hpp"

using namespace affinity;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Graph random_graph(std::size_t nodes, double mean_degree, std::mt19937& rng) {
  const double p = mean_degree / static_cast<double>(nodes - 1);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i + 1 < nodes; ++i)
    for (std::size_t j = i + 1; j < nodes; ++j)
      if (coin(rng) < p)
        edges.emplace_back("n" + std::to_string(i), "n" + std::to_string(j));
  return Graph::build(edges);
}

SimilarityPairs random_pairs(const Graph& g, std::size_t relationships,
                             std::size_t per_relationship, std::mt19937& rng) {
  std::uniform_int_distribution<NodeIndex> pick(
      0, static_cast<NodeIndex>(g.node_count() - 1));
  std::uniform_real_distribution<double> strength(0.1, 1.0);
  SimilarityPairs pairs;
  pairs.per_relationship.resize(relationships);
  for (auto& list : pairs.per_relationship) {
    while (list.size() < per_relationship) {
      NodeIndex i = pick(rng), j = pick(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      list.push_back({i, j, strength(rng)});
    }
  }
  return pairs;
}

void bench_pathfinder(const Graph& g, int k_max) {
  std::vector<NodeIndex> sources(g.node_count());
  for (NodeIndex u = 0; u < g.node_count(); ++u) sources[u] = u;

  auto t_serial = Clock::now();
  auto serial = find_paths_many(g, sources, k_max, false);
  const double serial_s = seconds_since(t_serial);

  auto t_parallel = Clock::now();
  auto parallel = find_paths_many(g, sources, k_max, true);
  const double parallel_s = seconds_since(t_parallel);

  std::size_t total = 0;
  for (const PathSet& set : serial) total += set.path_count();
  std::printf("pathfinder   %6zu paths  serial %8.3f ms  parallel %8.3f ms  %.2fx\n",
              total, serial_s * 1000.0, parallel_s * 1000.0,
              serial_s / parallel_s);
  (void)parallel;
}

void bench_gradient(const Graph& g, int k_max, std::mt19937& rng) {
  SimilarityPairs pairs = random_pairs(g, 3, 400, rng);
  PairPathIndex index = PairPathIndex::build(g, pairs, k_max, nullptr, true);
  AffinityGraphs aff(g.edge_count(), 3);
  aff.refresh_degrees(g);
  FitConfig cfg;
  cfg.k_max = k_max;

  const int reps = 20;
  auto t_serial = Clock::now();
  for (int r = 0; r < reps; ++r) {
    auto grad = gradient_serial(aff, pairs, index, cfg);
    (void)grad;
  }
  const double serial_s = seconds_since(t_serial) / reps;

  auto t_parallel = Clock::now();
  for (int r = 0; r < reps; ++r) {
    auto grad = gradient_parallel(aff, pairs, index, cfg);
    (void)grad;
  }
  const double parallel_s = seconds_since(t_parallel) / reps;

  std::printf("gradient     %6zu pairs  serial %8.3f ms  parallel %8.3f ms  %.2fx\n",
              pairs.total(), serial_s * 1000.0, parallel_s * 1000.0,
              serial_s / parallel_s);
}

void bench_cache(const Graph& g, int k_max, std::mt19937& rng) {
  std::uniform_int_distribution<NodeIndex> pick(
      0, static_cast<NodeIndex>(g.node_count() - 1));
  std::vector<std::pair<NodeIndex, NodeIndex>> queries;
  while (queries.size() < 500) {
    NodeIndex i = pick(rng), j = pick(rng);
    if (i != j) queries.emplace_back(i, j);
  }

  auto sweep = [&](PathCache* cache) {
    std::size_t n = 0;
    for (const auto& [i, j] : queries) n += pair_paths(g, i, j, k_max, cache).size();
    return n;
  };

  auto t_cold = Clock::now();
  sweep(nullptr);
  sweep(nullptr);
  const double cold_s = seconds_since(t_cold);

  PathCache cache;
  auto t_warm = Clock::now();
  sweep(&cache);  // fills
  sweep(&cache);  // hits
  const double warm_s = seconds_since(t_warm);

  auto stats = cache.stats();
  std::printf("path cache   %6zu lookups  uncached %6.3f ms  cached %6.3f ms  %.2fx"
              "  (%llu hits, %llu misses)\n",
              queries.size() * 2, cold_s * 1000.0, warm_s * 1000.0,
              cold_s / warm_s, static_cast<unsigned long long>(stats.hits),
              static_cast<unsigned long long>(stats.misses));
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp on, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp off, serial fallbacks everywhere\n");
#endif
  std::mt19937 rng(7);
  Graph g = random_graph(800, 6.0, rng);
  std::printf("graph: %zu nodes, %zu edges, k = 3\n", g.node_count(),
              g.edge_count());

  bench_pathfinder(g, 3);
  bench_gradient(g, 3, rng);
  bench_cache(g, 3, rng);
  return 0;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>
#include <random>
#include <vector>

#include "affinity/graph.hpp"
#include "affinity/pathfinder.hpp"
#include "support/oracle.hpp"

using namespace affinity;

namespace {

Graph triangle() {
  return Graph::build({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

Graph k4() {
  return Graph::build({{"a", "b"}, {"a", "c"}, {"a", "d"},
                       {"b", "c"}, {"b", "d"}, {"c", "d"}});
}

}  // namespace

TEST_CASE("triangle paths from one source") {
  Graph g = triangle();
  PathSet set = find_paths(g, 0, 2);
  // to b: a-b and a-c-b; to c: a-c and a-b-c; nothing back to a
  CHECK(set.path_count() == 4);
  CHECK(set.by_target[0].empty());
  REQUIRE(set.by_target[1].size() == 2);
  REQUIRE(set.by_target[2].size() == 2);
  // grouped by ascending length
  CHECK(set.by_target[1][0].length() == 1);
  CHECK(set.by_target[1][1].length() == 2);
  CHECK(set.by_target[1][1].nodes == std::vector<NodeIndex>{0, 2, 1});
}

TEST_CASE("k4 holds five simple paths between adjacent nodes at k_max 3") {
  Graph g = k4();
  PathSet set = find_paths(g, 0, 3);
  CHECK(set.by_target[1].size() == 5);  // 1 direct + 2 two-step + 2 three-step
  auto expected = oracle::sorted_sequences(oracle::brute_force_paths(g, 0, 1, 3));
  CHECK(oracle::sorted_sequences(set.by_target[1]) == expected);
}

TEST_CASE("k_max bounds the path length exactly") {
  Graph g = k4();
  for (int k = 0; k <= 3; ++k) {
    PathSet set = find_paths(g, 0, k);
    std::size_t longest = 0;
    for (const auto& bucket : set.by_target)
      for (const auto& p : bucket) longest = std::max(longest, p.length());
    if (k == 0) {
      CHECK(set.path_count() == 0);
    } else {
      CHECK(longest == static_cast<std::size_t>(k));
    }
  }
}

TEST_CASE("descriptors carry consistent bitsets") {
  Graph g = triangle();
  PathSet set = find_paths(g, 0, 2);
  for (NodeIndex t = 0; t < g.node_count(); ++t) {
    for (const auto& p : set.by_target[t]) {
      CHECK(p.nodes.size() == p.edges.size() + 1);
      CHECK(p.node_bits.popcount() == p.nodes.size());
      CHECK(p.edge_bits.popcount() == p.edges.size());
      for (NodeIndex u : p.nodes) CHECK(p.contains_node(u));
      for (EdgeIndex e : p.edges) CHECK(p.contains_edge(e));
      CHECK(p.nodes.front() == 0);
      CHECK(p.nodes.back() == t);
    }
  }
}

TEST_CASE("reversal swaps the sequences and keeps the bitsets") {
  Graph g = triangle();
  PathSet set = find_paths(g, 0, 2);
  const PathDescriptor& p = set.by_target[1][1];  // a-c-b
  PathDescriptor r = p.reversed();
  CHECK(r.nodes == std::vector<NodeIndex>{1, 2, 0});
  CHECK(r.node_bits == p.node_bits);
  CHECK(r.edge_bits == p.edge_bits);
  CHECK(same_path(p, r));
}

TEST_CASE("same_path rejects descriptors from different graphs") {
  Graph small = triangle();
  Graph big = k4();
  PathDescriptor a = find_paths(small, 0, 1).by_target[1][0];
  PathDescriptor b = find_paths(big, 0, 1).by_target[1][0];
  CHECK_THROWS_AS(same_path(a, b), std::invalid_argument);
}

TEST_CASE("out-of-range sources are rejected") {
  Graph g = triangle();
  CHECK_THROWS_AS(find_paths(g, 7, 2), std::invalid_argument);
}

TEST_CASE("enumeration matches the dfs oracle on random graphs") {
  std::mt19937 rng(4202);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = oracle::random_graph(4 + trial % 7, 0.4, rng);
    const int k = 1 + trial % 4;
    for (NodeIndex s = 0; s < g.node_count(); ++s) {
      PathSet set = find_paths(g, s, k);
      for (NodeIndex t = 0; t < g.node_count(); ++t) {
        if (t == s) {
          CHECK(set.by_target[t].empty());
          continue;
        }
        auto expected =
            oracle::sorted_sequences(oracle::brute_force_paths(g, s, t, k));
        CHECK(oracle::sorted_sequences(set.by_target[t]) == expected);
      }
    }
  }
}

TEST_CASE("parallel and serial enumeration agree") {
  std::mt19937 rng(77);
  Graph g = oracle::random_graph(10, 0.3, rng);
  std::vector<NodeIndex> sources;
  for (NodeIndex s = 0; s < g.node_count(); ++s) sources.push_back(s);
  auto serial = find_paths_many(g, sources, 3, false);
  auto parallel = find_paths_many(g, sources, 3, true);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t s = 0; s < serial.size(); ++s) {
    for (NodeIndex t = 0; t < g.node_count(); ++t) {
      CHECK(oracle::sorted_sequences(serial[s].by_target[t]) ==
            oracle::sorted_sequences(parallel[s].by_target[t]));
    }
  }
}

TEST_CASE("pair_paths starts at i and runs from the cheaper endpoint") {
  // star plus tail: center c has high degree, leaf x degree 1
  Graph g = Graph::build(
      {{"c", "x"}, {"c", "y"}, {"c", "z"}, {"c", "w"}, {"x", "y"}});
  NodeIndex c = *g.index_of("c"), x = *g.index_of("x");
  auto paths = pair_paths(g, c, x, 2);
  REQUIRE(paths.size() == 2);
  for (const auto& p : paths) {
    CHECK(p.nodes.front() == c);
    CHECK(p.nodes.back() == x);
  }
  // flipped order flips the orientation, not the path set
  auto flipped = pair_paths(g, x, c, 2);
  REQUIRE(flipped.size() == 2);
  for (const auto& p : flipped) {
    CHECK(p.nodes.front() == x);
    CHECK(p.nodes.back() == c);
  }
  CHECK_THROWS_AS(pair_paths(g, c, c, 2), std::invalid_argument);
}

TEST_CASE("cache state never changes pair_paths results") {
  std::mt19937 rng(99);
  Graph g = oracle::random_graph(9, 0.4, rng);
  // baseline without any cache
  std::vector<std::vector<std::vector<NodeIndex>>> expected;
  for (NodeIndex i = 0; i < g.node_count(); ++i)
    for (NodeIndex j = i + 1; j < g.node_count(); ++j)
      expected.push_back(oracle::sorted_sequences(pair_paths(g, i, j, 3)));

  for (std::size_t capacity : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                               PathCache::kDefaultCapacity}) {
    PathCache cache(capacity);
    // two sweeps so the second one hits whatever the cache kept
    for (int sweep = 0; sweep < 2; ++sweep) {
      std::size_t at = 0;
      for (NodeIndex i = 0; i < g.node_count(); ++i)
        for (NodeIndex j = i + 1; j < g.node_count(); ++j)
          CHECK(oracle::sorted_sequences(pair_paths(g, i, j, 3, &cache)) ==
                expected[at++]);
    }
    CHECK(cache.capacity() == capacity);
    auto stats = cache.stats();
    if (capacity == 0) {
      CHECK(stats.entries == 0);
      CHECK(stats.hits == 0);
    } else if (capacity == PathCache::kDefaultCapacity) {
      CHECK(stats.evictions == 0);
      CHECK(stats.hits > 0);
    }
  }
}

TEST_CASE("cache returns inserted sets and counts hits") {
  Graph g = triangle();
  PathCache cache(10);
  CHECK(cache.find(0, 2) == nullptr);
  auto made = std::make_shared<const PathSet>(find_paths(g, 0, 2));
  cache.insert(0, 2, made);
  auto back = cache.find(0, 2);
  REQUIRE(back != nullptr);
  CHECK(back.get() == made.get());
  CHECK(cache.find(0, 3) == nullptr);  // k_max is part of the key
  auto stats = cache.stats();
  CHECK(stats.hits == 1);
  CHECK(stats.misses == 2);
  CHECK(stats.entries == 1);
}

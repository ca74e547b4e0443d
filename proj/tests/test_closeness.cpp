#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "affinity/closeness.hpp"
#include "affinity/graph.hpp"
#include "affinity/pathfinder.hpp"

using namespace affinity;

namespace {

Graph triangle() {
  return Graph::build({{"a", "b"}, {"b", "c"}, {"a", "c"}});
}

Graph chain3() {
  return Graph::build({{"a", "b"}, {"b", "c"}});
}

}  // namespace

TEST_CASE("weights start uniform and degrees follow refresh") {
  Graph g = triangle();
  AffinityGraphs aff(g.edge_count(), 2);
  CHECK(aff.edge_count() == 3);
  CHECK(aff.relationship_count() == 2);
  CHECK(aff.weight(0, 0) == doctest::Approx(0.5));
  CHECK_FALSE(aff.degrees_ready());
  aff.refresh_degrees(g);
  REQUIRE(aff.degrees_ready());
  // every node touches two edges, each contributing 0.5
  for (NodeIndex u = 0; u < 3; ++u) {
    CHECK(aff.degree(0, u) == doctest::Approx(1.0));
    CHECK(aff.degree(1, u) == doctest::Approx(1.0));
  }

  aff.set_weight(0, 0, 0.8);
  aff.set_weight(0, 1, 0.2);
  aff.refresh_degrees(g);
  auto [u, v] = g.endpoints(0);
  CHECK(aff.degree(0, u) == doctest::Approx(1.3));
  CHECK(aff.degree(0, v) == doctest::Approx(1.3));

  CHECK_THROWS_AS(AffinityGraphs(3, 0), std::invalid_argument);
}

TEST_CASE("invalid row counting respects the floor and the sum") {
  AffinityGraphs aff(3, 2, 1e-6);
  CHECK(aff.count_invalid_rows() == 0);
  aff.set_weight(0, 0, 0.7);  // row sums to 1.2
  CHECK(aff.count_invalid_rows() == 1);
  aff.set_weight(0, 1, 0.3);
  CHECK(aff.count_invalid_rows() == 0);
  aff.set_weight(1, 0, 1.0 - 1e-9);  // partner dips under the floor
  aff.set_weight(1, 1, 1e-9);
  CHECK(aff.count_invalid_rows() == 1);
}

TEST_CASE("truncation bound is alpha to the k_max plus one") {
  CHECK(truncation_bound(0.8, 3) == doctest::Approx(0.4096));
  CHECK(truncation_bound(1.0, 5) == doctest::Approx(1.0));
  CHECK(truncation_bound(0.5, 1) == doctest::Approx(0.25));
  // k 0 is legal for the bound itself: nothing enumerated, everything beyond
  CHECK(truncation_bound(0.8, 0) == doctest::Approx(0.8));
  CHECK_THROWS_AS(truncation_bound(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(truncation_bound(1.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(truncation_bound(0.8, -1), std::invalid_argument);
}

TEST_CASE("path probability on the uniform triangle") {
  Graph g = triangle();
  AffinityGraphs aff(g.edge_count(), 1);  // M = 1: all weights 1
  aff.refresh_degrees(g);                 // every degree is 2

  PathSet set = find_paths(g, 0, 2);
  const PathDescriptor& direct = set.by_target[1][0];    // a-b
  const PathDescriptor& detour = set.by_target[1][1];    // a-c-b

  // 0.8 * (1/2) and 0.8^2 * (1/2) * (1/2)
  CHECK(path_probability(direct, aff, 0, 0.8) == doctest::Approx(0.4));
  CHECK(path_probability(detour, aff, 0, 0.8) == doctest::Approx(0.16));
  // symmetric degrees: the reverse walk scores the same here
  CHECK(path_probability_reverse(detour, aff, 0, 0.8) == doctest::Approx(0.16));

  std::vector<PathDescriptor> both{direct, detour};
  CHECK(pair_closeness(both, aff, 0, 0.8, Direction::mean) ==
        doctest::Approx(0.56));
  CHECK(pair_closeness(both, aff, 0, 0.8, Direction::forward) ==
        doctest::Approx(0.56));
  CHECK(pair_closeness({}, aff, 0, 0.8, Direction::mean) == 0.0);
}

TEST_CASE("direction handling differs on asymmetric degrees") {
  Graph g = chain3();  // a-b-c: a and c have degree 1, b has degree 2
  AffinityGraphs aff(g.edge_count(), 1);
  aff.refresh_degrees(g);

  PathSet set = find_paths(g, 0, 1);
  const PathDescriptor& ab = set.by_target[1][0];
  // forward from a: 0.8 * 1/1; read back from b: 0.8 * 1/2
  CHECK(path_probability(ab, aff, 0, 0.8) == doctest::Approx(0.8));
  CHECK(path_probability_reverse(ab, aff, 0, 0.8) == doctest::Approx(0.4));
  CHECK(path_mass(ab, aff, 0, 0.8, Direction::forward) == doctest::Approx(0.8));
  CHECK(path_mass(ab, aff, 0, 0.8, Direction::mean) == doctest::Approx(0.6));

  // two-step walk a-b-c: forward 0.8^2 * 1 * 1/2 = 0.32, and the reverse
  // walk c-b-a scores the same by symmetry of this chain
  PathSet longer = find_paths(g, 0, 2);
  const PathDescriptor& abc = longer.by_target[2][0];
  CHECK(path_probability(abc, aff, 0, 0.8) == doctest::Approx(0.32));
  CHECK(path_mass(abc, aff, 0, 0.8, Direction::mean) == doctest::Approx(0.32));
}

TEST_CASE("path probability rejects misuse") {
  Graph g = triangle();
  AffinityGraphs aff(g.edge_count(), 1);
  PathSet set = find_paths(g, 0, 1);
  const PathDescriptor& p = set.by_target[1][0];
  CHECK_THROWS_AS(path_probability(p, aff, 0, 0.8), std::logic_error);

  aff.refresh_degrees(g);
  PathDescriptor empty;
  CHECK_THROWS_AS(path_probability(empty, aff, 0, 0.8), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "affinity/closeness.hpp"
#include "affinity/evaluate.hpp"
#include "affinity/graph.hpp"

using namespace affinity;

namespace {

// path graph with the requested number of edges
Graph chain(std::size_t edges) {
  std::vector<std::pair<std::string, std::string>> list;
  for (std::size_t k = 0; k < edges; ++k)
    list.emplace_back("n" + std::to_string(k), "n" + std::to_string(k + 1));
  return Graph::build(list);
}

}  // namespace

TEST_CASE("thresholds are inclusive per relationship") {
  AffinityGraphs aff(1, 2);
  aff.set_weight(0, 0, 0.45);
  aff.set_weight(0, 1, 0.55);
  PredictionSet pred = threshold_predictions(aff, std::vector<double>{0.4, 0.7});
  CHECK(pred.at(0, 0));
  CHECK_FALSE(pred.at(0, 1));

  // exact equality counts as predicted
  PredictionSet edge = threshold_predictions(aff, std::vector<double>{0.45, 0.55});
  CHECK(edge.at(0, 0));
  CHECK(edge.at(0, 1));

  // theta = 0 marks everything, even the epsilon floor
  PredictionSet all = threshold_predictions(aff, std::vector<double>{0.0, 0.0});
  CHECK(all.at(0, 0));
  CHECK(all.at(0, 1));
}

TEST_CASE("threshold vector must match the relationship count and range") {
  AffinityGraphs aff(1, 2);
  CHECK_THROWS_AS(threshold_predictions(aff, std::vector<double>{0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(threshold_predictions(aff, std::vector<double>{0.5, 1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(threshold_predictions(aff, std::vector<double>{-0.1, 0.5}),
                  std::invalid_argument);
}

TEST_CASE("precision recall and f1 over labeled edges only") {
  // four labeled edges: two true positives, one false positive, one miss
  PredictionSet pred;
  pred.relationship_count = 1;
  pred.predicted = {1, 1, 1, 0, 1};  // fifth edge is unlabeled noise

  LabelSet gold;
  gold.entries.push_back({0, {0}});   // predicted, gold -> tp
  gold.entries.push_back({1, {0}});   // predicted, gold -> tp
  gold.entries.push_back({2, {}});    // predicted, not gold -> fp
  gold.entries.push_back({3, {0}});   // not predicted, gold -> fn

  PrfScore score = score_prf(pred, gold, 0);
  CHECK(score.tp == 2);
  CHECK(score.fp == 1);
  CHECK(score.fn == 1);
  CHECK(score.precision == doctest::Approx(2.0 / 3.0));
  CHECK(score.recall == doctest::Approx(2.0 / 3.0));
  CHECK(score.f1 == doctest::Approx(2.0 / 3.0));
  CHECK_FALSE(score.no_predictions);
}

TEST_CASE("scoring demands gold positives") {
  PredictionSet pred;
  pred.relationship_count = 1;
  pred.predicted = {1};
  LabelSet gold;
  gold.entries.push_back({0, {}});
  CHECK_THROWS_AS(score_prf(pred, gold, 0), std::invalid_argument);
}

TEST_CASE("empty prediction sets pin precision to zero with a flag") {
  PredictionSet pred;
  pred.relationship_count = 1;
  pred.predicted = {0, 0};
  LabelSet gold;
  gold.entries.push_back({0, {0}});
  gold.entries.push_back({1, {0}});
  PrfScore score = score_prf(pred, gold, 0);
  CHECK(score.no_predictions);
  CHECK(score.precision == 0.0);
  CHECK(score.recall == 0.0);
  CHECK(score.f1 == 0.0);
  CHECK(score.fn == 2);
}

TEST_CASE("coverage counts profiled and multi-relationship edges") {
  Graph g = chain(10);
  PredictionSet pred;
  pred.relationship_count = 2;
  pred.predicted.assign(20, 0);
  for (EdgeIndex e = 0; e < 8; ++e) pred.predicted[e * 2] = 1;  // profiled
  pred.predicted[0 * 2 + 1] = 1;  // multi
  pred.predicted[1 * 2 + 1] = 1;  // multi

  CoverageScore cov = coverage(pred, g);
  CHECK(cov.total_edges == 10);
  CHECK(cov.profiled_edges == 8);
  CHECK(cov.multi_edges == 2);
  CHECK(cov.systematicness == doctest::Approx(0.8));
  CHECK(cov.completeness == doctest::Approx(0.25));
}

TEST_CASE("coverage of an empty prediction set is all zeros") {
  Graph g = chain(3);
  PredictionSet pred;
  pred.relationship_count = 2;
  pred.predicted.assign(6, 0);
  CoverageScore cov = coverage(pred, g);
  CHECK(cov.systematicness == 0.0);
  CHECK(cov.completeness == 0.0);  // no division by zero
  CHECK(cov.profiled_edges == 0);
}

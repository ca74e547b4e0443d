#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "affinity/closeness.hpp"
#include "affinity/graph.hpp"
#include "affinity/pathfinder.hpp"
#include "affinity/similarity.hpp"

namespace affinity {

struct FitConfig {
  double step_size = 0.05;
  int max_iters = 100;
  double tolerance = 1e-6;  // relative objective change that counts as converged
  int k_max = 3;
  double alpha = 0.8;
  double epsilon = 1e-6;  // simplex floor per weight
  Direction direction = Direction::mean;
  bool deterministic = false;  // serial kernels, fixed reduction order
  int max_backtracks = 10;
};

/// Path lists for every constrained pair, shared across relationships and
/// computed once per fit: the lists depend only on the graph and k_max.
/// Lists are oriented to start at the pair's smaller node index.
class PairPathIndex {
 public:
  static PairPathIndex build(const Graph& graph, const SimilarityPairs& pairs,
                             int k_max, PathCache* cache, bool parallel);

  std::span<const PathDescriptor> paths_for(NodeIndex i, NodeIndex j) const;

  std::size_t pair_count() const { return lists_.size(); }

 private:
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
  std::vector<std::vector<PathDescriptor>> lists_;
};

struct ObjectiveValue {
  double value = 0.0;
  std::size_t skipped_pairs = 0;  // constrained pairs with no path within k_max
};

/// Similarity-weighted log closeness summed over constrained pairs.
/// Refreshes the degree snapshot from the current weights first.
ObjectiveValue log_likelihood(AffinityGraphs& aff, const Graph& graph,
                              const SimilarityPairs& pairs,
                              const PairPathIndex& paths, const FitConfig& cfg);

/// Same objective but using whatever degree snapshot the weights carry;
/// this is the quantity whose partial gradient the ascent follows.
ObjectiveValue log_likelihood_frozen(const AffinityGraphs& aff,
                                     const SimilarityPairs& pairs,
                                     const PairPathIndex& paths,
                                     const FitConfig& cfg);

/// Partial gradient of the objective with the degree snapshot held fixed,
/// laid out like the weight vector [e * M + m]. Requires refreshed degrees.
std::vector<double> gradient(const AffinityGraphs& aff,
                             const SimilarityPairs& pairs,
                             const PairPathIndex& paths, const FitConfig& cfg);
std::vector<double> gradient_serial(const AffinityGraphs& aff,
                                    const SimilarityPairs& pairs,
                                    const PairPathIndex& paths,
                                    const FitConfig& cfg);
std::vector<double> gradient_parallel(const AffinityGraphs& aff,
                                      const SimilarityPairs& pairs,
                                      const PairPathIndex& paths,
                                      const FitConfig& cfg);

/// Euclidean projection onto { x : x_i >= epsilon, sum x = 1 }, in place.
/// Throws ConfigError when row.size() * epsilon > 1.
void project_to_simplex(std::span<double> row, double epsilon);

struct IterationStat {
  double objective;
  double step;  // accepted step size; 0 for the initial evaluation
};

struct FitReport {
  std::vector<IterationStat> iterations;  // [0] is the initial objective
  bool converged = false;
  bool stalled = false;  // backtracking found no non-decreasing step
  bool no_constrained_pairs = false;
  bool all_pairs_pathless = false;
  std::size_t constrained_pairs = 0;
  std::size_t skipped_pairs = 0;
  std::size_t simplex_violations = 0;
  double truncation_bound = 0.0;
  double path_seconds = 0.0;
  double ascent_seconds = 0.0;
  PathCache::Stats cache;

  std::size_t accepted_iterations() const {
    return iterations.empty() ? 0 : iterations.size() - 1;
  }
};

struct FitResult {
  AffinityGraphs weights;
  FitReport report;
};

/// Projected gradient ascent from the uniform point: step along the partial
/// gradient, project each row back to the simplex, halve the step while the
/// objective would decrease. Accepted objectives are non-decreasing by
/// construction; convergence is a relative objective change below tolerance.
FitResult fit(const Graph& graph, const SimilarityPairs& pairs,
              const FitConfig& cfg, PathCache* cache = nullptr);

}  // namespace affinity

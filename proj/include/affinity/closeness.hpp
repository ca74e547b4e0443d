#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "affinity/graph.hpp"
#include "affinity/pathfinder.hpp"

namespace affinity {

/// Which directional reachability feeds the pair closeness: the mean of both
/// directions (default, symmetric by construction) or the forward direction
/// only, following the path orientation as given.
enum class Direction { mean, forward };

/// Per-edge rows of relationship weights on the probability simplex, plus
/// the weighted degrees d[m][u] = sum of the row entries over edges at u.
/// Degrees are refreshed explicitly so evaluations within one gradient step
/// all see the same snapshot.
class AffinityGraphs {
 public:
  AffinityGraphs(std::size_t edge_count, std::size_t relationship_count,
                 double epsilon = 1e-6);

  std::size_t edge_count() const { return e_count_; }
  std::size_t relationship_count() const { return m_count_; }
  double epsilon() const { return epsilon_; }

  double weight(EdgeIndex e, std::size_t m) const {
    return w_[std::size_t{e} * m_count_ + m];
  }
  void set_weight(EdgeIndex e, std::size_t m, double v) {
    w_[std::size_t{e} * m_count_ + m] = v;
  }
  std::span<double> row(EdgeIndex e) {
    return {w_.data() + std::size_t{e} * m_count_, m_count_};
  }
  std::span<const double> row(EdgeIndex e) const {
    return {w_.data() + std::size_t{e} * m_count_, m_count_};
  }
  std::span<const double> weights() const { return w_; }
  std::span<double> weights() { return w_; }

  // Every row to the uniform point 1/M.
  void set_uniform();

  void refresh_degrees(const Graph& graph);
  bool degrees_ready() const { return !deg_.empty(); }
  double degree(std::size_t m, NodeIndex u) const {
    return deg_[m * node_count_ + u];
  }

  // Rows off the simplex (entry below epsilon or sum away from 1 by more
  // than tol); used by the fit loop's invariant bookkeeping.
  std::size_t count_invalid_rows(double tol = 1e-9) const;

 private:
  std::size_t e_count_;
  std::size_t m_count_;
  double epsilon_;
  std::vector<double> w_;    // [e * M + m]
  std::vector<double> deg_;  // [m * V + u]
  std::size_t node_count_ = 0;
};

// Mass never reached by paths of length <= k_max: alpha^(k_max + 1).
double truncation_bound(double alpha, int k_max);

// Probability of walking the path from its first node: product over steps of
// weight / weighted-degree-of-origin, discounted by alpha^length. Requires
// refreshed degrees; empty paths are rejected.
double path_probability(const PathDescriptor& path, const AffinityGraphs& aff,
                        std::size_t m, double alpha);

// Same walk read from the last node towards the first.
double path_probability_reverse(const PathDescriptor& path,
                                const AffinityGraphs& aff, std::size_t m,
                                double alpha);

// Per-path mass under the chosen direction handling.
double path_mass(const PathDescriptor& path, const AffinityGraphs& aff,
                 std::size_t m, double alpha, Direction direction);

// Closeness of the pair the paths connect: sum of per-path masses. Empty
// path lists give 0 (the pair is unreachable within k_max).
double pair_closeness(std::span<const PathDescriptor> paths,
                      const AffinityGraphs& aff, std::size_t m, double alpha,
                      Direction direction);

}  // namespace affinity

#include "affinity/closeness.hpp"

#include <cmath>
#include <stdexcept>

namespace affinity {

AffinityGraphs::AffinityGraphs(std::size_t edge_count,
                               std::size_t relationship_count, double epsilon)
    : e_count_(edge_count), m_count_(relationship_count), epsilon_(epsilon) {
  if (relationship_count == 0) {
    throw std::invalid_argument("AffinityGraphs: need at least one relationship");
  }
  w_.assign(e_count_ * m_count_, 0.0);
  set_uniform();
}

void AffinityGraphs::set_uniform() {
  const double u = 1.0 / static_cast<double>(m_count_);
  for (double& w : w_) w = u;
}

void AffinityGraphs::refresh_degrees(const Graph& graph) {
  node_count_ = graph.node_count();
  deg_.assign(m_count_ * node_count_, 0.0);
  for (EdgeIndex e = 0; e < e_count_; ++e) {
    auto [u, v] = graph.endpoints(e);
    for (std::size_t m = 0; m < m_count_; ++m) {
      const double w = weight(e, m);
      deg_[m * node_count_ + u] += w;
      deg_[m * node_count_ + v] += w;
    }
  }
}

std::size_t AffinityGraphs::count_invalid_rows(double tol) const {
  std::size_t bad = 0;
  for (EdgeIndex e = 0; e < e_count_; ++e) {
    double sum = 0.0;
    bool low = false;
    for (double w : row(e)) {
      sum += w;
      if (w < epsilon_) low = true;
    }
    if (low || std::abs(sum - 1.0) > tol) ++bad;
  }
  return bad;
}

double truncation_bound(double alpha, int k_max) {
  if (k_max < 0 || alpha <= 0.0 || alpha > 1.0) {
    throw std::invalid_argument("truncation_bound: need k_max >= 0, alpha in (0,1]");
  }
  return std::pow(alpha, k_max + 1);
}

namespace {

void check_path(const PathDescriptor& path, const AffinityGraphs& aff) {
  if (path.edges.empty()) {
    throw std::invalid_argument("path_probability: empty path");
  }
  if (!aff.degrees_ready()) {
    throw std::logic_error("path_probability: degrees not refreshed");
  }
}

}  // namespace

double path_probability(const PathDescriptor& path, const AffinityGraphs& aff,
                        std::size_t m, double alpha) {
  check_path(path, aff);
  double p = 1.0;
  for (std::size_t s = 0; s < path.edges.size(); ++s) {
    p *= aff.weight(path.edges[s], m) / aff.degree(m, path.nodes[s]);
  }
  return p * std::pow(alpha, static_cast<double>(path.edges.size()));
}

double path_probability_reverse(const PathDescriptor& path,
                                const AffinityGraphs& aff, std::size_t m,
                                double alpha) {
  check_path(path, aff);
  double p = 1.0;
  for (std::size_t s = 0; s < path.edges.size(); ++s) {
    p *= aff.weight(path.edges[s], m) / aff.degree(m, path.nodes[s + 1]);
  }
  return p * std::pow(alpha, static_cast<double>(path.edges.size()));
}

double path_mass(const PathDescriptor& path, const AffinityGraphs& aff,
                 std::size_t m, double alpha, Direction direction) {
  if (direction == Direction::forward) {
    return path_probability(path, aff, m, alpha);
  }
  return 0.5 * (path_probability(path, aff, m, alpha) +
                path_probability_reverse(path, aff, m, alpha));
}

double pair_closeness(std::span<const PathDescriptor> paths,
                      const AffinityGraphs& aff, std::size_t m, double alpha,
                      Direction direction) {
  double total = 0.0;
  for (const PathDescriptor& p : paths) {
    total += path_mass(p, aff, m, alpha, direction);
  }
  return total;
}

}  // namespace affinity

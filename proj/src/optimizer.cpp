#include "affinity/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "affinity/errors.hpp"

namespace affinity {

namespace {

std::uint64_t pair_key(NodeIndex i, NodeIndex j) {
  return (std::uint64_t{i} << 32) | j;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void validate_config(const FitConfig& cfg, std::size_t m_count) {
  if (m_count == 0) throw ConfigError("no relationships configured");
  if (cfg.k_max < 1) throw ConfigError("k_max must be at least 1");
  if (cfg.alpha <= 0.0 || cfg.alpha > 1.0) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  if (cfg.step_size <= 0.0) throw ConfigError("step_size must be positive");
  if (cfg.max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (cfg.epsilon <= 0.0) throw ConfigError("epsilon must be positive");
  if (static_cast<double>(m_count) * cfg.epsilon > 1.0) {
    throw ConfigError("epsilon floor leaves no room on the simplex: M * epsilon > 1");
  }
  if (cfg.tolerance < 0.0) throw ConfigError("tolerance must be non-negative");
  if (cfg.max_backtracks < 0) throw ConfigError("max_backtracks must be non-negative");
}

std::vector<double> alpha_powers(double alpha, int k_max) {
  std::vector<double> pow(static_cast<std::size_t>(k_max) + 1, 1.0);
  for (std::size_t k = 1; k < pow.size(); ++k) pow[k] = pow[k - 1] * alpha;
  return pow;
}

// Both directional walk probabilities of one path in a single pass.
double path_mass_fast(const PathDescriptor& path, const AffinityGraphs& aff,
                      std::size_t m, std::span<const double> alpha_pow,
                      Direction direction) {
  double fwd = 1.0;
  double rev = 1.0;
  for (std::size_t s = 0; s < path.edges.size(); ++s) {
    const double w = aff.weight(path.edges[s], m);
    fwd *= w / aff.degree(m, path.nodes[s]);
    if (direction == Direction::mean) {
      rev *= w / aff.degree(m, path.nodes[s + 1]);
    }
  }
  const double decay = alpha_pow[path.edges.size()];
  if (direction == Direction::forward) return fwd * decay;
  return 0.5 * (fwd + rev) * decay;
}

struct PairRef {
  std::size_t m;
  const ScoredPair* pair;
};

std::vector<PairRef> flatten(const SimilarityPairs& pairs) {
  std::vector<PairRef> flat;
  flat.reserve(pairs.total());
  for (std::size_t m = 0; m < pairs.per_relationship.size(); ++m) {
    for (const ScoredPair& p : pairs.per_relationship[m]) {
      flat.push_back({m, &p});
    }
  }
  return flat;
}

ObjectiveValue objective_serial(const AffinityGraphs& aff,
                                const SimilarityPairs& pairs,
                                const PairPathIndex& index,
                                const FitConfig& cfg) {
  const auto pow = alpha_powers(cfg.alpha, cfg.k_max);
  double j = 0.0;
  std::size_t skipped = 0;
  for (std::size_t m = 0; m < pairs.per_relationship.size(); ++m) {
    for (const ScoredPair& p : pairs.per_relationship[m]) {
      auto paths = index.paths_for(p.i, p.j);
      if (paths.empty()) {
        ++skipped;
        continue;
      }
      double closeness = 0.0;
      for (const PathDescriptor& l : paths) {
        closeness += path_mass_fast(l, aff, m, pow, cfg.direction);
      }
      j += p.f * std::log(closeness);
    }
  }
  return {j, skipped};
}

ObjectiveValue objective_parallel(const AffinityGraphs& aff,
                                  const SimilarityPairs& pairs,
                                  const PairPathIndex& index,
                                  const FitConfig& cfg) {
#ifdef _OPENMP
  const auto pow = alpha_powers(cfg.alpha, cfg.k_max);
  const auto flat = flatten(pairs);
  double j = 0.0;
  std::uint64_t skipped = 0;
#pragma omp parallel for schedule(static) reduction(+ : j, skipped)
  for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(flat.size());
       ++idx) {
    const PairRef& ref = flat[idx];
    auto paths = index.paths_for(ref.pair->i, ref.pair->j);
    if (paths.empty()) {
      ++skipped;
      continue;
    }
    double closeness = 0.0;
    for (const PathDescriptor& l : paths) {
      closeness += path_mass_fast(l, aff, ref.m, pow, cfg.direction);
    }
    j += ref.pair->f * std::log(closeness);
  }
  return {j, static_cast<std::size_t>(skipped)};
#else
  return objective_serial(aff, pairs, index, cfg);
#endif
}

// Gradient contribution of one pair: for each path through edge e, the
// path's share of the pair's closeness divided by the edge weight.
void accumulate_pair(const AffinityGraphs& aff, const PairPathIndex& index,
                     std::size_t m, const ScoredPair& p,
                     std::span<const double> pow, Direction direction,
                     std::vector<double>& masses, std::span<double> grad) {
  auto paths = index.paths_for(p.i, p.j);
  if (paths.empty()) return;
  masses.clear();
  double closeness = 0.0;
  for (const PathDescriptor& l : paths) {
    const double q = path_mass_fast(l, aff, m, pow, direction);
    masses.push_back(q);
    closeness += q;
  }
  const double coef = p.f / closeness;
  const std::size_t m_count = aff.relationship_count();
  for (std::size_t li = 0; li < paths.size(); ++li) {
    const PathDescriptor& l = paths[li];
    for (EdgeIndex e : l.edges) {
      grad[std::size_t{e} * m_count + m] += coef * masses[li] / aff.weight(e, m);
    }
  }
}

}  // namespace

PairPathIndex PairPathIndex::build(const Graph& graph,
                                   const SimilarityPairs& pairs, int k_max,
                                   PathCache* cache, bool parallel) {
  PairPathIndex out;

  std::vector<std::uint64_t> keys;
  for (const auto& rel : pairs.per_relationship) {
    for (const ScoredPair& p : rel) keys.push_back(pair_key(p.i, p.j));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  if (keys.empty()) return out;

  // One enumeration per distinct source; the smaller-degree endpoint does
  // fewer extensions and the path sets are symmetric.
  std::vector<NodeIndex> sources;
  sources.reserve(keys.size());
  for (std::uint64_t key : keys) {
    const NodeIndex i = static_cast<NodeIndex>(key >> 32);
    const NodeIndex j = static_cast<NodeIndex>(key & 0xffffffffu);
    sources.push_back(graph.degree(j) < graph.degree(i) ? j : i);
  }
  std::vector<NodeIndex> unique_sources = sources;
  std::sort(unique_sources.begin(), unique_sources.end());
  unique_sources.erase(std::unique(unique_sources.begin(), unique_sources.end()),
                       unique_sources.end());

  std::unordered_map<NodeIndex, std::shared_ptr<const PathSet>> resolved;
  std::vector<NodeIndex> missing;
  for (NodeIndex s : unique_sources) {
    std::shared_ptr<const PathSet> hit = cache ? cache->find(s, k_max) : nullptr;
    if (hit) {
      resolved.emplace(s, std::move(hit));
    } else {
      missing.push_back(s);
    }
  }
  std::vector<PathSet> computed = find_paths_many(graph, missing, k_max, parallel);
  for (std::size_t s = 0; s < missing.size(); ++s) {
    auto set = std::make_shared<const PathSet>(std::move(computed[s]));
    if (cache) cache->insert(missing[s], k_max, set);
    resolved.emplace(missing[s], std::move(set));
  }

  out.lists_.reserve(keys.size());
  for (std::size_t idx = 0; idx < keys.size(); ++idx) {
    const NodeIndex i = static_cast<NodeIndex>(keys[idx] >> 32);
    const NodeIndex j = static_cast<NodeIndex>(keys[idx] & 0xffffffffu);
    const NodeIndex source = sources[idx];
    const NodeIndex target = source == i ? j : i;
    const auto& list = resolved.at(source)->by_target[target];
    std::vector<PathDescriptor> oriented;
    oriented.reserve(list.size());
    for (const PathDescriptor& p : list) {
      oriented.push_back(source == i ? p : p.reversed());
    }
    out.index_.emplace(keys[idx], static_cast<std::uint32_t>(out.lists_.size()));
    out.lists_.push_back(std::move(oriented));
  }
  return out;
}

std::span<const PathDescriptor> PairPathIndex::paths_for(NodeIndex i,
                                                         NodeIndex j) const {
  auto it = index_.find(pair_key(i, j));
  if (it == index_.end()) {
    throw std::out_of_range("PairPathIndex: pair was not indexed");
  }
  return lists_[it->second];
}

ObjectiveValue log_likelihood(AffinityGraphs& aff, const Graph& graph,
                              const SimilarityPairs& pairs,
                              const PairPathIndex& paths,
                              const FitConfig& cfg) {
  aff.refresh_degrees(graph);
  return log_likelihood_frozen(aff, pairs, paths, cfg);
}

ObjectiveValue log_likelihood_frozen(const AffinityGraphs& aff,
                                     const SimilarityPairs& pairs,
                                     const PairPathIndex& paths,
                                     const FitConfig& cfg) {
  if (!aff.degrees_ready()) {
    throw std::logic_error("log_likelihood_frozen: degrees not refreshed");
  }
  return cfg.deterministic ? objective_serial(aff, pairs, paths, cfg)
                           : objective_parallel(aff, pairs, paths, cfg);
}

std::vector<double> gradient_serial(const AffinityGraphs& aff,
                                    const SimilarityPairs& pairs,
                                    const PairPathIndex& index,
                                    const FitConfig& cfg) {
  const auto pow = alpha_powers(cfg.alpha, cfg.k_max);
  std::vector<double> grad(aff.edge_count() * aff.relationship_count(), 0.0);
  std::vector<double> masses;
  for (std::size_t m = 0; m < pairs.per_relationship.size(); ++m) {
    for (const ScoredPair& p : pairs.per_relationship[m]) {
      accumulate_pair(aff, index, m, p, pow, cfg.direction, masses, grad);
    }
  }
  return grad;
}

std::vector<double> gradient_parallel(const AffinityGraphs& aff,
                                      const SimilarityPairs& pairs,
                                      const PairPathIndex& index,
                                      const FitConfig& cfg) {
#ifdef _OPENMP
  const auto pow = alpha_powers(cfg.alpha, cfg.k_max);
  const auto flat = flatten(pairs);
  const std::size_t size = aff.edge_count() * aff.relationship_count();

  // Per-thread accumulators, merged in thread order afterwards.
  std::vector<std::vector<double>> partial(omp_get_max_threads());
#pragma omp parallel
  {
    auto& mine = partial[omp_get_thread_num()];
    mine.assign(size, 0.0);
    std::vector<double> masses;
#pragma omp for schedule(static)
    for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(flat.size());
         ++idx) {
      accumulate_pair(aff, index, flat[idx].m, *flat[idx].pair, pow,
                      cfg.direction, masses, mine);
    }
  }

  std::vector<double> grad(size, 0.0);
  for (const auto& part : partial) {
    if (part.empty()) continue;
    for (std::size_t i = 0; i < size; ++i) grad[i] += part[i];
  }
  return grad;
#else
  return gradient_serial(aff, pairs, index, cfg);
#endif
}

std::vector<double> gradient(const AffinityGraphs& aff,
                             const SimilarityPairs& pairs,
                             const PairPathIndex& paths, const FitConfig& cfg) {
  return cfg.deterministic ? gradient_serial(aff, pairs, paths, cfg)
                           : gradient_parallel(aff, pairs, paths, cfg);
}

void project_to_simplex(std::span<double> row, double epsilon) {
  const std::size_t m = row.size();
  if (epsilon < 0.0 || static_cast<double>(m) * epsilon > 1.0) {
    throw ConfigError("project_to_simplex: M * epsilon exceeds 1");
  }
  // Shift out the floor, project onto the simplex of the remaining mass
  // (sorting-based threshold), shift back.
  const double mass = std::max(0.0, 1.0 - static_cast<double>(m) * epsilon);
  std::vector<double> v(row.begin(), row.end());
  for (double& x : v) x -= epsilon;
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0;
  double tau = 0.0;
  std::size_t support = 0;
  for (std::size_t r = 0; r < m; ++r) {
    running += sorted[r];
    const double candidate = (running - mass) / static_cast<double>(r + 1);
    if (sorted[r] - candidate > 0.0) {
      tau = candidate;
      support = r + 1;
    }
  }
  if (support == 0) {
    // Only reachable when mass is 0, i.e. M * epsilon == 1: everything
    // sits on the floor.
    for (double& x : row) x = epsilon;
    return;
  }
  for (std::size_t i = 0; i < m; ++i) {
    row[i] = std::max(v[i] - tau, 0.0) + epsilon;
  }
}

FitResult fit(const Graph& graph, const SimilarityPairs& pairs,
              const FitConfig& cfg, PathCache* cache) {
  const std::size_t m_count = pairs.per_relationship.size();
  validate_config(cfg, m_count);

  FitResult result{AffinityGraphs(graph.edge_count(), m_count, cfg.epsilon), {}};
  AffinityGraphs& aff = result.weights;
  FitReport& report = result.report;
  report.truncation_bound = truncation_bound(cfg.alpha, cfg.k_max);
  report.constrained_pairs = pairs.total();

  auto t0 = std::chrono::steady_clock::now();
  PairPathIndex index =
      PairPathIndex::build(graph, pairs, cfg.k_max, cache, !cfg.deterministic);
  report.path_seconds = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  ObjectiveValue initial = log_likelihood(aff, graph, pairs, index, cfg);
  report.skipped_pairs = initial.skipped_pairs;
  report.iterations.push_back({initial.value, 0.0});

  report.no_constrained_pairs = report.constrained_pairs == 0;
  report.all_pairs_pathless = report.constrained_pairs > 0 &&
                              report.skipped_pairs == report.constrained_pairs;
  if (report.no_constrained_pairs || report.all_pairs_pathless) {
    // Nothing ties the weights to the data; keep the uniform start.
    report.converged = true;
    report.ascent_seconds = seconds_since(t0);
    if (cache) report.cache = cache->stats();
    return result;
  }

  double j_prev = initial.value;
  AffinityGraphs candidate = aff;
  for (int t = 1; t <= cfg.max_iters; ++t) {
    // Degrees are fresh from the previous objective evaluation.
    const std::vector<double> g = gradient(aff, pairs, index, cfg);

    double step = cfg.step_size;
    bool accepted = false;
    double j_new = 0.0;
    for (int b = 0; b <= cfg.max_backtracks; ++b, step *= 0.5) {
      for (EdgeIndex e = 0; e < aff.edge_count(); ++e) {
        auto src = aff.row(e);
        auto dst = candidate.row(e);
        const std::size_t base = std::size_t{e} * m_count;
        for (std::size_t m = 0; m < m_count; ++m) {
          dst[m] = src[m] + step * g[base + m];
        }
        project_to_simplex(dst, cfg.epsilon);
      }
      ObjectiveValue obj = log_likelihood(candidate, graph, pairs, index, cfg);
      if (obj.value >= j_prev) {
        accepted = true;
        j_new = obj.value;
        break;
      }
    }
    if (!accepted) {
      // No step kept the objective from falling; stop where we are.
      report.stalled = true;
      report.converged = true;
      break;
    }

    std::swap(aff, candidate);
    report.iterations.push_back({j_new, step});
    report.simplex_violations += aff.count_invalid_rows();

    const double rel = std::abs(j_new - j_prev) / (1.0 + std::abs(j_prev));
    j_prev = j_new;
    if (rel < cfg.tolerance) {
      report.converged = true;
      break;
    }
  }

  report.ascent_seconds = seconds_since(t0);
  if (cache) report.cache = cache->stats();
  return result;
}

}  // namespace affinity

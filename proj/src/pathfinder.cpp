#include "affinity/pathfinder.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace affinity {

PathDescriptor PathDescriptor::reversed() const {
  PathDescriptor r;
  r.nodes.assign(nodes.rbegin(), nodes.rend());
  r.edges.assign(edges.rbegin(), edges.rend());
  r.node_bits = node_bits;
  r.edge_bits = edge_bits;
  return r;
}

bool same_path(const PathDescriptor& a, const PathDescriptor& b) {
  if (a.node_bits.size() != b.node_bits.size() ||
      a.edge_bits.size() != b.edge_bits.size()) {
    throw std::invalid_argument("same_path: descriptors from different graphs");
  }
  return a.node_bits == b.node_bits && a.edge_bits == b.edge_bits;
}

namespace {

// Per-target dedup: candidate edge-set hash to indices in the target list.
using SeenMap = std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>;

bool already_present(const SeenMap& seen,
                     const std::vector<PathDescriptor>& list,
                     const PathDescriptor& prefix, EdgeIndex e,
                     std::uint64_t hash) {
  auto it = seen.find(hash);
  if (it == seen.end()) return false;
  for (std::uint32_t idx : it->second) {
    if (list[idx].edge_bits.equals_with_bit(prefix.edge_bits, e)) return true;
  }
  return false;
}

}  // namespace

PathSet find_paths(const Graph& graph, NodeIndex source, int k_max) {
  const std::size_t n = graph.node_count();
  if (source >= n) {
    throw std::invalid_argument("find_paths: source out of range");
  }

  PathSet out;
  out.source = source;
  out.k_max = k_max;
  out.by_target.assign(n, {});
  if (k_max <= 0) return out;

  // Seed the source with a zero-length path so the first sweep emits the
  // length-1 paths; it is stripped from the result at the end.
  PathDescriptor seed;
  seed.nodes = {source};
  seed.node_bits = DynamicBitset(n);
  seed.edge_bits = DynamicBitset(graph.edge_count());
  seed.node_bits.set(source);
  out.by_target[source].push_back(std::move(seed));

  std::vector<SeenMap> seen(n);
  std::vector<NodeIndex> frontier{source};
  std::vector<std::uint8_t> flagged(n, 0);
  std::vector<std::uint32_t> watermark(n, 0);

  for (int k = 1; k <= k_max && !frontier.empty(); ++k) {
    // Snapshot list sizes first: paths arriving during this sweep belong to
    // the next one, otherwise a length-k path could spawn length-k+1
    // extensions in the same round and overshoot k_max.
    for (NodeIndex i : frontier) {
      watermark[i] = static_cast<std::uint32_t>(out.by_target[i].size());
    }

    std::vector<NodeIndex> next;
    for (NodeIndex i : frontier) {
      const auto& paths_i = out.by_target[i];
      const std::uint32_t limit = watermark[i];
      for (const auto& nb : graph.neighbors(i)) {
        const NodeIndex j = nb.node;
        auto& list_j = out.by_target[j];
        for (std::uint32_t idx = 0; idx < limit; ++idx) {
          const PathDescriptor& l = paths_i[idx];
          if (l.node_bits.test(j)) continue;  // would revisit a node
          const std::uint64_t h = l.edge_bits.hash_with_bit(nb.edge);
          if (already_present(seen[j], list_j, l, nb.edge, h)) continue;

          PathDescriptor cand = l;
          cand.nodes.push_back(j);
          cand.edges.push_back(nb.edge);
          cand.node_bits.set(j);
          cand.edge_bits.set(nb.edge);
          seen[j][h].push_back(static_cast<std::uint32_t>(list_j.size()));
          list_j.push_back(std::move(cand));
          if (!flagged[j]) {
            flagged[j] = 1;
            next.push_back(j);
          }
        }
      }
    }
    for (NodeIndex j : next) flagged[j] = 0;
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }

  out.by_target[source].clear();  // drop the bookkeeping seed
  return out;
}

std::vector<PathSet> find_paths_many(const Graph& graph,
                                     std::span<const NodeIndex> sources,
                                     int k_max, bool parallel) {
  std::vector<PathSet> out(sources.size());
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(sources.size());
         ++s) {
      out[s] = find_paths(graph, sources[s], k_max);
    }
    return out;
  }
#else
  (void)parallel;
#endif
  for (std::size_t s = 0; s < sources.size(); ++s) {
    out[s] = find_paths(graph, sources[s], k_max);
  }
  return out;
}

PathCache::PathCache(std::size_t capacity) : lru_(capacity) {}

std::shared_ptr<const PathSet> PathCache::find(NodeIndex source, int k_max) {
  std::lock_guard<std::mutex> lock(mu_);
  auto hit = lru_.get(Key{source, k_max});
  if (hit) {
    ++hits_;
    return *hit;
  }
  ++misses_;
  return nullptr;
}

void PathCache::insert(NodeIndex source, int k_max,
                       std::shared_ptr<const PathSet> paths) {
  std::lock_guard<std::mutex> lock(mu_);
  lru_.put(Key{source, k_max}, std::move(paths));
}

PathCache::Stats PathCache::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return Stats{hits_, misses_, lru_.evictions(), lru_.size()};
}

std::size_t PathCache::capacity() const {
  std::lock_guard<std::mutex> lock(mu_);
  return lru_.capacity();
}

std::vector<PathDescriptor> pair_paths(const Graph& graph, NodeIndex i,
                                       NodeIndex j, int k_max,
                                       PathCache* cache) {
  if (i == j) throw std::invalid_argument("pair_paths: endpoints coincide");
  if (i >= graph.node_count() || j >= graph.node_count()) {
    throw std::invalid_argument("pair_paths: endpoint out of range");
  }

  NodeIndex source = i, target = j;
  if (graph.degree(j) < graph.degree(i)) {
    source = j;
    target = i;
  }

  std::shared_ptr<const PathSet> paths;
  if (cache) paths = cache->find(source, k_max);
  if (!paths) {
    paths = std::make_shared<const PathSet>(find_paths(graph, source, k_max));
    if (cache) cache->insert(source, k_max, paths);
  }

  const auto& list = paths->by_target[target];
  std::vector<PathDescriptor> out;
  out.reserve(list.size());
  for (const PathDescriptor& p : list) {
    out.push_back(source == i ? p : p.reversed());
  }
  return out;
}

}  // namespace affinity

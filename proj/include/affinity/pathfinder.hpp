#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "affinity/bitset.hpp"
#include "affinity/graph.hpp"
#include "affinity/lru_cache.hpp"

namespace affinity {

/// A simple path stored as its node sequence plus node/edge bitsets, so
/// membership tests and path equality reduce to word operations. Bit widths
/// are fixed by the graph the path was enumerated on; descriptors from
/// different graphs must not be compared.
struct PathDescriptor {
  std::vector<NodeIndex> nodes;  // nodes.front() is the source
  std::vector<EdgeIndex> edges;  // edges[s] joins nodes[s] and nodes[s+1]
  DynamicBitset node_bits;
  DynamicBitset edge_bits;

  std::size_t length() const { return edges.size(); }
  bool contains_node(NodeIndex u) const { return node_bits.test(u); }
  bool contains_edge(EdgeIndex e) const { return edge_bits.test(e); }

  PathDescriptor reversed() const;
};

// Equality via the bitsets; throws if the descriptors were built for
// different graphs (mismatched bit widths).
bool same_path(const PathDescriptor& a, const PathDescriptor& b);

/// All simple paths of length 1..k_max from one source, bucketed by target
/// node and grouped by ascending length within each bucket.
struct PathSet {
  NodeIndex source = 0;
  int k_max = 0;
  std::vector<std::vector<PathDescriptor>> by_target;

  std::size_t path_count() const {
    std::size_t n = 0;
    for (const auto& v : by_target) n += v.size();
    return n;
  }
};

/// Level-synchronous sweep: each round extends the paths discovered so far
/// at flagged nodes by one edge, skipping extensions that would revisit a
/// node and candidates already present in the target's list. k_max <= 0
/// yields an empty set; an out-of-range source throws.
PathSet find_paths(const Graph& graph, NodeIndex source, int k_max);

/// Independent per source, so the parallel variant just splits the source
/// list across threads; results are identical to the serial loop.
std::vector<PathSet> find_paths_many(const Graph& graph,
                                     std::span<const NodeIndex> sources,
                                     int k_max, bool parallel);

/// Shared LRU over per-source path sets, keyed by (source, k_max). Thread
/// safe; capacity 0 disables caching, and lookups always fall back to a
/// fresh enumeration, so results never depend on cache state.
class PathCache {
 public:
  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t evictions = 0;
    std::size_t entries = 0;
  };

  explicit PathCache(std::size_t capacity = kDefaultCapacity);

  std::shared_ptr<const PathSet> find(NodeIndex source, int k_max);
  void insert(NodeIndex source, int k_max, std::shared_ptr<const PathSet> paths);

  Stats stats() const;
  std::size_t capacity() const;

  static constexpr std::size_t kDefaultCapacity = 10000;

 private:
  struct Key {
    NodeIndex source;
    int k_max;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::uint64_t>{}((std::uint64_t{k.source} << 32) ^
                                        static_cast<std::uint32_t>(k.k_max));
    }
  };

  mutable std::mutex mu_;
  LruCache<Key, std::shared_ptr<const PathSet>, KeyHash> lru_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

/// Paths between an unordered pair, oriented to start at i. Enumeration runs
/// from the endpoint with the smaller degree since path sets are symmetric;
/// the cache, when given, is consulted first and fed afterwards.
std::vector<PathDescriptor> pair_paths(const Graph& graph, NodeIndex i,
                                       NodeIndex j, int k_max,
                                       PathCache* cache = nullptr);

}  // namespace affinity

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace affinity {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

/// One edge line from an input file; `line` is 1-based for error messages.
struct EdgeRecord {
  std::string u;
  std::string v;
  int line = 0;
};

struct IngestReport {
  std::size_t duplicate_edges = 0;
};

/// Immutable undirected simple graph over dense node indices. Node indices
/// follow first appearance in the input, edge endpoints are stored with the
/// smaller index first, and adjacency lists are sorted by neighbor index so
/// traversal order is deterministic.
class Graph {
 public:
  struct Neighbor {
    NodeIndex node;
    EdgeIndex edge;
  };

  // Rejects self-loops (with the offending line) and empty input; duplicate
  // edges are collapsed and counted in the report.
  static Graph build(std::span<const EdgeRecord> edges,
                     IngestReport* report = nullptr,
                     const std::string& source_name = "<edges>");
  static Graph build(const std::vector<std::pair<std::string, std::string>>& edges,
                     IngestReport* report = nullptr);

  std::size_t node_count() const { return ids_.size(); }
  std::size_t edge_count() const { return endpoints_.size(); }

  std::span<const Neighbor> neighbors(NodeIndex u) const {
    return adjacency_[u];
  }
  std::size_t degree(NodeIndex u) const { return adjacency_[u].size(); }

  // Endpoints with the smaller node index first.
  std::pair<NodeIndex, NodeIndex> endpoints(EdgeIndex e) const {
    return endpoints_[e];
  }

  std::optional<EdgeIndex> edge_between(NodeIndex u, NodeIndex v) const;

  const std::string& id_of(NodeIndex u) const { return ids_[u]; }
  std::optional<NodeIndex> index_of(std::string_view id) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::pair<NodeIndex, NodeIndex>> endpoints_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Reads whitespace-separated "id id" lines; '#' starts a comment, blank
/// lines are skipped. Throws ParseError on malformed lines or unreadable
/// files.
std::vector<EdgeRecord> read_edge_file(const std::string& path);

}  // namespace affinity

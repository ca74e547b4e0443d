#include "affinity/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

Graph Graph::build(std::span<const EdgeRecord> edges, IngestReport* report,
                   const std::string& source_name) {
  if (edges.empty()) {
    throw ParseError(source_name, 0, "empty graph: no edges given");
  }

  Graph g;
  std::unordered_map<std::uint64_t, EdgeIndex> seen;
  std::size_t duplicates = 0;

  auto intern = [&g](const std::string& id) -> NodeIndex {
    auto it = g.index_.find(id);
    if (it != g.index_.end()) return it->second;
    NodeIndex idx = static_cast<NodeIndex>(g.ids_.size());
    g.ids_.push_back(id);
    g.index_.emplace(id, idx);
    g.adjacency_.emplace_back();
    return idx;
  };

  for (const EdgeRecord& rec : edges) {
    if (rec.u == rec.v) {
      throw ParseError(source_name, rec.line,
                       "self-loop on node '" + rec.u + "'");
    }
    NodeIndex a = intern(rec.u);
    NodeIndex b = intern(rec.v);
    if (a > b) std::swap(a, b);
    auto [it, inserted] = seen.emplace(pair_key(a, b),
                                       static_cast<EdgeIndex>(g.endpoints_.size()));
    if (!inserted) {
      ++duplicates;
      continue;
    }
    EdgeIndex e = it->second;
    g.endpoints_.emplace_back(a, b);
    g.adjacency_[a].push_back({b, e});
    g.adjacency_[b].push_back({a, e});
  }

  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }

  if (report) report->duplicate_edges = duplicates;
  return g;
}

Graph Graph::build(const std::vector<std::pair<std::string, std::string>>& edges,
                   IngestReport* report) {
  std::vector<EdgeRecord> records;
  records.reserve(edges.size());
  int line = 1;
  for (const auto& [u, v] : edges) records.push_back({u, v, line++});
  return build(records, report);
}

std::optional<EdgeIndex> Graph::edge_between(NodeIndex u, NodeIndex v) const {
  if (u == v) return std::nullopt;
  const auto& adj = adjacency_[u];
  auto it = std::lower_bound(adj.begin(), adj.end(), v,
                             [](const Neighbor& n, NodeIndex x) { return n.node < x; });
  if (it == adj.end() || it->node != v) return std::nullopt;
  return it->edge;
}

std::optional<NodeIndex> Graph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<EdgeRecord> read_edge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::vector<EdgeRecord> records;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    std::istringstream fields(raw);
    std::string u, v, extra;
    if (!(fields >> u)) continue;  // blank or comment-only line
    if (!(fields >> v)) {
      throw ParseError(path, line, "expected two node ids");
    }
    if (fields >> extra) {
      throw ParseError(path, line, "trailing token '" + extra + "'");
    }
    records.push_back({u, v, line});
  }
  return records;
}

}  // namespace affinity

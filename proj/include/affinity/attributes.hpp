#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "affinity/graph.hpp"

namespace affinity {

enum class AttributeType { categorical, numerical };

struct AttributeDef {
  std::string name;
  AttributeType type = AttributeType::categorical;
};

struct RelationshipDef {
  std::string name;
  double threshold = 0.5;
  std::vector<AttributeDef> attributes;
};

/// One "node <TAB> attribute <TAB> value" record.
struct AttributeRecord {
  std::string node_id;
  std::string attribute;
  std::string value;
  int line = 0;
};

/// Node attribute columns grouped per relationship. Categorical columns hold
/// interned value-id sets per node plus an inverted value-to-nodes index;
/// numerical columns hold scalars plus the global max pairwise difference.
class AttributeTable {
 public:
  static AttributeTable load(const Graph& graph,
                             std::span<const RelationshipDef> relationships,
                             std::span<const AttributeRecord> records,
                             const std::string& source_name = "<attributes>");

  std::size_t relationship_count() const { return columns_.size(); }
  const RelationshipDef& relationship(std::size_t m) const {
    return relationships_[m];
  }
  std::size_t attribute_count(std::size_t m) const {
    return columns_[m].size();
  }
  AttributeType attribute_type(std::size_t m, std::size_t a) const {
    return columns_[m][a].def.type;
  }

  // Sorted value ids for a categorical column; empty means unattributed.
  std::span<const std::int32_t> categorical_values(std::size_t m, std::size_t a,
                                                   NodeIndex u) const {
    return columns_[m][a].values[u];
  }
  std::optional<double> numerical_value(std::size_t m, std::size_t a,
                                        NodeIndex u) const {
    const Column& col = columns_[m][a];
    if (!col.present[u]) return std::nullopt;
    return col.scalar[u];
  }
  double max_difference(std::size_t m, std::size_t a) const {
    return columns_[m][a].max_diff;
  }

  std::size_t value_count(std::size_t m, std::size_t a) const {
    return columns_[m][a].members.size();
  }
  // Nodes holding a given categorical value, sorted by index.
  std::span<const NodeIndex> nodes_with_value(std::size_t m, std::size_t a,
                                              std::int32_t value_id) const {
    return columns_[m][a].members[value_id];
  }

  // True when the node has a value for every attribute of relationship m.
  bool fully_attributed(std::size_t m, NodeIndex u) const;

  std::size_t unknown_node_warnings() const { return unknown_nodes_; }
  std::size_t unknown_attribute_warnings() const { return unknown_attributes_; }

 private:
  struct Column {
    AttributeDef def;
    // categorical
    std::vector<std::vector<std::int32_t>> values;  // per node, sorted ids
    std::unordered_map<std::string, std::int32_t> value_index;
    std::vector<std::string> value_names;
    std::vector<std::vector<NodeIndex>> members;  // per value id, sorted
    // numerical
    std::vector<double> scalar;
    std::vector<std::uint8_t> present;
    double max_diff = 0.0;
  };

  std::vector<RelationshipDef> relationships_;
  std::vector<std::vector<Column>> columns_;  // [m][a]
  std::size_t unknown_nodes_ = 0;
  std::size_t unknown_attributes_ = 0;
};

/// Reads tab-separated "node-id \t attribute \t value" lines; '#' lines are
/// comments. Throws ParseError on malformed lines or unreadable files.
std::vector<AttributeRecord> read_attribute_file(const std::string& path);

}  // namespace affinity

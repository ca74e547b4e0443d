#include "affinity/attributes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

bool parse_scalar(const std::string& text, double* out) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

}  // namespace

AttributeTable AttributeTable::load(const Graph& graph,
                                    std::span<const RelationshipDef> relationships,
                                    std::span<const AttributeRecord> records,
                                    const std::string& source_name) {
  AttributeTable table;
  table.relationships_.assign(relationships.begin(), relationships.end());

  const std::size_t n = graph.node_count();
  // Attribute names may be shared across relationships; one record then
  // feeds every column with that name.
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>
      by_name;
  table.columns_.resize(relationships.size());
  for (std::size_t m = 0; m < relationships.size(); ++m) {
    const RelationshipDef& rel = relationships[m];
    table.columns_[m].resize(rel.attributes.size());
    for (std::size_t a = 0; a < rel.attributes.size(); ++a) {
      Column& col = table.columns_[m][a];
      col.def = rel.attributes[a];
      if (col.def.type == AttributeType::categorical) {
        col.values.resize(n);
      } else {
        col.scalar.assign(n, 0.0);
        col.present.assign(n, 0);
      }
      by_name[col.def.name].emplace_back(m, a);
    }
  }

  for (const AttributeRecord& rec : records) {
    auto node = graph.index_of(rec.node_id);
    if (!node) {
      ++table.unknown_nodes_;
      continue;
    }
    auto cols = by_name.find(rec.attribute);
    if (cols == by_name.end()) {
      ++table.unknown_attributes_;
      continue;
    }
    for (auto [m, a] : cols->second) {
      Column& col = table.columns_[m][a];
      if (col.def.type == AttributeType::categorical) {
        auto [it, inserted] =
            col.value_index.emplace(rec.value,
                                    static_cast<std::int32_t>(col.value_names.size()));
        if (inserted) col.value_names.push_back(rec.value);
        col.values[*node].push_back(it->second);
      } else {
        double v = 0.0;
        if (!parse_scalar(rec.value, &v)) {
          throw ParseError(source_name, rec.line,
                           "attribute '" + rec.attribute +
                               "' expects a finite number, got '" + rec.value + "'");
        }
        col.scalar[*node] = v;  // repeated records overwrite
        col.present[*node] = 1;
      }
    }
  }

  for (auto& rel_cols : table.columns_) {
    for (Column& col : rel_cols) {
      if (col.def.type == AttributeType::categorical) {
        for (auto& vals : col.values) {
          std::sort(vals.begin(), vals.end());
          vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        }
        col.members.resize(col.value_names.size());
        for (NodeIndex u = 0; u < n; ++u) {
          for (std::int32_t v : col.values[u]) col.members[v].push_back(u);
        }
      } else {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (NodeIndex u = 0; u < n; ++u) {
          if (!col.present[u]) continue;
          lo = std::min(lo, col.scalar[u]);
          hi = std::max(hi, col.scalar[u]);
        }
        col.max_diff = (lo <= hi) ? hi - lo : 0.0;
      }
    }
  }

  return table;
}

bool AttributeTable::fully_attributed(std::size_t m, NodeIndex u) const {
  for (const Column& col : columns_[m]) {
    if (col.def.type == AttributeType::categorical) {
      if (col.values[u].empty()) return false;
    } else {
      if (!col.present[u]) return false;
    }
  }
  return true;
}

std::vector<AttributeRecord> read_attribute_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::vector<AttributeRecord> records;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty() || raw[0] == '#') continue;
    auto t1 = raw.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : raw.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw ParseError(path, line, "expected node-id<TAB>attribute<TAB>value");
    }
    AttributeRecord rec;
    rec.node_id = raw.substr(0, t1);
    rec.attribute = raw.substr(t1 + 1, t2 - t1 - 1);
    rec.value = raw.substr(t2 + 1);
    rec.line = line;
    if (rec.node_id.empty() || rec.attribute.empty() || rec.value.empty()) {
      throw ParseError(path, line, "empty field");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace affinity

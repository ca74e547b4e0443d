#include "affinity/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "affinity/errors.hpp"

namespace affinity {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!known.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

AttributeDef parse_attribute(const json& node) {
  if (!node.is_object()) throw ConfigError("attribute entries must be objects");
  reject_unknown_keys(node, {"name", "type"}, "attribute");
  AttributeDef def;
  def.name = node.at("name").get<std::string>();
  const std::string type = node.at("type").get<std::string>();
  if (type == "categorical") {
    def.type = AttributeType::categorical;
  } else if (type == "numerical") {
    def.type = AttributeType::numerical;
  } else {
    throw ConfigError("attribute type must be 'categorical' or 'numerical', got '" +
                      type + "'");
  }
  if (def.name.empty()) throw ConfigError("attribute name must not be empty");
  return def;
}

RelationshipDef parse_relationship(const json& node) {
  if (!node.is_object()) throw ConfigError("relationship entries must be objects");
  reject_unknown_keys(node, {"name", "threshold", "attributes"}, "relationship");
  RelationshipDef rel;
  rel.name = node.at("name").get<std::string>();
  if (rel.name.empty()) throw ConfigError("relationship name must not be empty");
  rel.threshold = node.value("threshold", 0.5);
  if (!node.contains("attributes") || !node.at("attributes").is_array()) {
    throw ConfigError("relationship '" + rel.name + "' needs an attribute list");
  }
  for (const json& attr : node.at("attributes")) {
    rel.attributes.push_back(parse_attribute(attr));
  }
  return rel;
}

}  // namespace

RunConfig RunConfig::from_string(const std::string& text,
                                 const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(source_name + ": expected a JSON object");

  try {
    reject_unknown_keys(doc,
                        {"relationships", "k", "alpha", "step_size", "max_iters",
                         "tolerance", "epsilon", "cache_capacity", "direction",
                         "deterministic"},
                        "config");
    RunConfig cfg;
    if (!doc.contains("relationships") || !doc.at("relationships").is_array()) {
      throw ConfigError(source_name + ": missing 'relationships' array");
    }
    for (const json& rel : doc.at("relationships")) {
      cfg.relationships.push_back(parse_relationship(rel));
    }
    cfg.k_max = doc.value("k", cfg.k_max);
    cfg.alpha = doc.value("alpha", cfg.alpha);
    cfg.step_size = doc.value("step_size", cfg.step_size);
    cfg.max_iters = doc.value("max_iters", cfg.max_iters);
    cfg.tolerance = doc.value("tolerance", cfg.tolerance);
    cfg.epsilon = doc.value("epsilon", cfg.epsilon);
    cfg.cache_capacity = doc.value("cache_capacity", cfg.cache_capacity);
    if (doc.contains("direction")) {
      const std::string dir = doc.at("direction").get<std::string>();
      if (dir == "mean") {
        cfg.direction = Direction::mean;
      } else if (dir == "forward") {
        cfg.direction = Direction::forward;
      } else {
        throw ConfigError("direction must be 'mean' or 'forward', got '" + dir + "'");
      }
    }
    cfg.deterministic = doc.value("deterministic", cfg.deterministic);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(source_name + ": " + e.what());
  }
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str(), path);
}

void RunConfig::validate() const {
  if (relationships.empty()) {
    throw ConfigError("config needs at least one relationship");
  }
  std::set<std::string> names;
  for (const RelationshipDef& rel : relationships) {
    if (!names.insert(rel.name).second) {
      throw ConfigError("duplicate relationship name '" + rel.name + "'");
    }
    if (rel.attributes.empty()) {
      throw ConfigError("relationship '" + rel.name + "' has no attributes");
    }
    if (!(rel.threshold >= 0.0 && rel.threshold <= 1.0)) {
      throw ConfigError("threshold for '" + rel.name + "' must lie in [0, 1]");
    }
  }
  if (k_max < 1) throw ConfigError("k must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (step_size <= 0.0) throw ConfigError("step_size must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (tolerance < 0.0) throw ConfigError("tolerance must be non-negative");
  if (epsilon <= 0.0) throw ConfigError("epsilon must be positive");
  if (static_cast<double>(relationships.size()) * epsilon > 1.0) {
    throw ConfigError("epsilon floor leaves no room on the simplex: M * epsilon > 1");
  }
}

FitConfig RunConfig::fit_config() const {
  FitConfig cfg;
  cfg.step_size = step_size;
  cfg.max_iters = max_iters;
  cfg.tolerance = tolerance;
  cfg.k_max = k_max;
  cfg.alpha = alpha;
  cfg.epsilon = epsilon;
  cfg.direction = direction;
  cfg.deterministic = deterministic;
  return cfg;
}

std::vector<double> RunConfig::thresholds() const {
  std::vector<double> t;
  t.reserve(relationships.size());
  for (const RelationshipDef& rel : relationships) t.push_back(rel.threshold);
  return t;
}

std::size_t RunConfig::relationship_index(const std::string& name) const {
  for (std::size_t m = 0; m < relationships.size(); ++m) {
    if (relationships[m].name == name) return m;
  }
  throw ConfigError("unknown relationship '" + name + "'");
}

}  // namespace affinity

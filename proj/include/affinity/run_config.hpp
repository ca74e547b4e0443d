#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "affinity/attributes.hpp"
#include "affinity/optimizer.hpp"

namespace affinity {

/// Everything a profiling run needs beyond the input files. Parsed from a
/// JSON document; unknown keys are rejected so typos fail loudly.
struct RunConfig {
  std::vector<RelationshipDef> relationships;
  int k_max = 3;
  double alpha = 0.8;
  double step_size = 0.05;
  int max_iters = 100;
  double tolerance = 1e-6;
  double epsilon = 1e-6;
  std::size_t cache_capacity = PathCache::kDefaultCapacity;
  Direction direction = Direction::mean;
  bool deterministic = false;

  static RunConfig from_file(const std::string& path);
  static RunConfig from_string(const std::string& text,
                               const std::string& source_name = "<config>");

  // Throws ConfigError on out-of-range values or an unusable relationship
  // spec (no relationships, a relationship without attributes, ...).
  void validate() const;

  FitConfig fit_config() const;
  std::vector<double> thresholds() const;
  std::size_t relationship_index(const std::string& name) const;  // throws ConfigError
};

}  // namespace affinity

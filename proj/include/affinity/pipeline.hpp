#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "affinity/closeness.hpp"
#include "affinity/evaluate.hpp"
#include "affinity/optimizer.hpp"
#include "affinity/run_config.hpp"

namespace affinity {

/// Environment variable that overrides the configured path cache capacity.
inline constexpr const char* kCacheCapacityEnv = "AFFINITY_CACHE_CAPACITY";

struct ProfileOptions {
  std::string edges_path;
  std::string attributes_path;
  std::string config_path;
  std::string out_dir;
  std::string pairs_dump_path;  // optional
  std::optional<bool> deterministic;     // overrides config when set
  std::optional<Direction> direction;    // overrides config when set
};

struct ProfileOutcome {
  FitReport report;
  std::vector<std::string> written;  // files produced, for the run log
  std::size_t duplicate_edges = 0;
  std::size_t unknown_node_records = 0;
  std::size_t unknown_attribute_records = 0;
};

/// Full profiling run: ingest, constrained pairs, fit, outputs. Throws
/// ParseError / ConfigError / DegenerateInput; `log` receives a short
/// human-readable summary.
ProfileOutcome run_profile(const ProfileOptions& options, std::ostream& log);

struct EvalOptions {
  std::string edges_path;
  std::string affinity_path;  // combined file from a profile run
  std::string labels_path;
  std::string config_path;
  std::string report_path;  // optional JSON report
};

struct EvalRow {
  std::string name;
  bool scored = false;  // false when the labels hold no positive for it
  PrfScore score;
};

struct EvalOutcome {
  std::vector<EvalRow> rows;
  CoverageScore coverage;
};

/// Scores a profile output against gold labels and prints the table to
/// `out`. Throws ParseError / ConfigError / UnknownLabelEdges.
EvalOutcome run_eval(const EvalOptions& options, std::ostream& out);

struct PathsOptions {
  std::string edges_path;
  std::string source_id;
  int k_max = 3;
};

/// Prints every simple path from the source, one per line as comma-joined
/// node ids, sorted by (length, id sequence).
void run_paths(const PathsOptions& options, std::ostream& out);

}  // namespace affinity

#include "affinity/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "affinity/errors.hpp"
#include "affinity/io.hpp"
#include "affinity/similarity.hpp"

namespace affinity {

namespace {

std::size_t cache_capacity_from_env(std::size_t configured) {
  const char* raw = std::getenv(kCacheCapacityEnv);
  if (!raw || !*raw) return configured;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (end == raw || *end != '\0') {
    throw ConfigError(std::string(kCacheCapacityEnv) + " must be an integer, got '" +
                      raw + "'");
  }
  return static_cast<std::size_t>(v);
}

std::vector<std::string> relationship_names(const RunConfig& cfg) {
  std::vector<std::string> names;
  names.reserve(cfg.relationships.size());
  for (const auto& rel : cfg.relationships) names.push_back(rel.name);
  return names;
}

}  // namespace

ProfileOutcome run_profile(const ProfileOptions& options, std::ostream& log) {
  RunConfig cfg = RunConfig::from_file(options.config_path);
  if (options.deterministic) cfg.deterministic = *options.deterministic;
  if (options.direction) cfg.direction = *options.direction;

  IngestReport ingest;
  const auto edge_records = read_edge_file(options.edges_path);
  const Graph graph = Graph::build(edge_records, &ingest, options.edges_path);

  const auto attr_records = read_attribute_file(options.attributes_path);
  const AttributeTable table = AttributeTable::load(
      graph, cfg.relationships, attr_records, options.attributes_path);

  const SimilarityPairs pairs = compute_similarity_pairs(table, graph, cfg.k_max);
  if (pairs.total() == 0) {
    throw DegenerateInput(
        "no constrained pairs: no node pair shares attribute values under any "
        "relationship");
  }

  PathCache cache(cache_capacity_from_env(cfg.cache_capacity));
  FitResult fitted = fit(graph, pairs, cfg.fit_config(), &cache);

  ProfileOutcome outcome;
  outcome.report = fitted.report;
  outcome.duplicate_edges = ingest.duplicate_edges;
  outcome.unknown_node_records = table.unknown_node_warnings();
  outcome.unknown_attribute_records = table.unknown_attribute_warnings();

  const std::filesystem::path out_dir(options.out_dir);
  std::filesystem::create_directories(out_dir);
  const std::vector<std::string> names = relationship_names(cfg);

  for (std::size_t m = 0; m < names.size(); ++m) {
    const auto path = out_dir / ("rel_" + std::to_string(m) + ".tsv");
    write_relationship_file(path.string(), graph, fitted.weights, m);
    outcome.written.push_back(path.string());
  }
  const auto combined = out_dir / "affinity.tsv";
  write_combined_file(combined.string(), graph, fitted.weights, names);
  outcome.written.push_back(combined.string());

  const auto report_path = out_dir / "fit_report.txt";
  {
    std::ofstream report_out(report_path);
    if (!report_out) {
      throw ParseError(report_path.string(), 0, "cannot open file for writing");
    }
    write_fit_report(report_out, fitted.report, cfg.deterministic);
  }
  outcome.written.push_back(report_path.string());

  if (!options.pairs_dump_path.empty()) {
    std::ofstream dump(options.pairs_dump_path);
    if (!dump) {
      throw ParseError(options.pairs_dump_path, 0, "cannot open file for writing");
    }
    write_pairs_dump(dump, pairs, graph, names);
    outcome.written.push_back(options.pairs_dump_path);
  }

  log << "graph: " << graph.node_count() << " nodes, " << graph.edge_count()
      << " edges";
  if (ingest.duplicate_edges > 0) {
    log << " (" << ingest.duplicate_edges << " duplicate lines collapsed)";
  }
  log << '\n';
  if (outcome.unknown_node_records > 0 || outcome.unknown_attribute_records > 0) {
    log << "warning: skipped " << outcome.unknown_node_records
        << " attribute records for unknown nodes, "
        << outcome.unknown_attribute_records << " for unknown attributes\n";
  }
  log << "constrained pairs: " << fitted.report.constrained_pairs;
  if (fitted.report.skipped_pairs > 0) {
    log << " (" << fitted.report.skipped_pairs << " unreachable within k="
        << cfg.k_max << ")";
  }
  log << '\n';
  if (fitted.report.all_pairs_pathless) {
    log << "warning: no constrained pair is connected within k="
        << cfg.k_max << "; weights stay uniform\n";
  }
  log << "mass beyond paths of length " << cfg.k_max
      << " is bounded by alpha^(k+1) = "
      << format_weight(fitted.report.truncation_bound) << '\n';
  log << "objective: " << format_weight(fitted.report.iterations.front().objective)
      << " -> " << format_weight(fitted.report.iterations.back().objective)
      << " in " << fitted.report.accepted_iterations() << " accepted iterations"
      << (fitted.report.converged ? " (converged)" : " (iteration budget)")
      << '\n';
  for (const std::string& path : outcome.written) {
    log << "wrote " << path << '\n';
  }
  return outcome;
}

EvalOutcome run_eval(const EvalOptions& options, std::ostream& out) {
  RunConfig cfg = RunConfig::from_file(options.config_path);
  const auto edge_records = read_edge_file(options.edges_path);
  const Graph graph = Graph::build(edge_records, nullptr, options.edges_path);
  const std::vector<std::string> names = relationship_names(cfg);

  const AffinityGraphs aff = read_combined_file(options.affinity_path, graph, names);
  const LabelSet labels = read_label_file(options.labels_path, graph, names);

  const std::vector<double> thresholds = cfg.thresholds();
  const PredictionSet predictions = threshold_predictions(aff, thresholds);

  EvalOutcome outcome;
  for (std::size_t m = 0; m < names.size(); ++m) {
    EvalRow row;
    row.name = names[m];
    try {
      row.score = score_prf(predictions, labels, m);
      row.scored = true;
    } catch (const std::invalid_argument&) {
      row.scored = false;  // no gold positives for this relationship
    }
    outcome.rows.push_back(std::move(row));
  }
  outcome.coverage = coverage(predictions, graph);

  std::size_t width = 12;
  for (const EvalRow& row : outcome.rows) width = std::max(width, row.name.size());
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-*s  %9s  %9s  %9s\n", static_cast<int>(width),
                "relationship", "precision", "recall", "f1");
  out << buf;
  for (const EvalRow& row : outcome.rows) {
    if (row.scored) {
      std::snprintf(buf, sizeof buf, "%-*s  %9.4f  %9.4f  %9.4f%s\n",
                    static_cast<int>(width), row.name.c_str(), row.score.precision,
                    row.score.recall, row.score.f1,
                    row.score.no_predictions ? "  (no predictions)" : "");
    } else {
      std::snprintf(buf, sizeof buf, "%-*s  %9s  %9s  %9s  (no gold positives)\n",
                    static_cast<int>(width), row.name.c_str(), "-", "-", "-");
    }
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "systematicness %.4f (%zu/%zu edges profiled), completeness %.4f "
                "(%zu/%zu multi-relationship)\n",
                outcome.coverage.systematicness, outcome.coverage.profiled_edges,
                outcome.coverage.total_edges, outcome.coverage.completeness,
                outcome.coverage.multi_edges, outcome.coverage.profiled_edges);
  out << buf;

  if (!options.report_path.empty()) {
    nlohmann::json doc;
    doc["relationships"] = nlohmann::json::array();
    for (const EvalRow& row : outcome.rows) {
      nlohmann::json entry;
      entry["name"] = row.name;
      entry["scored"] = row.scored;
      if (row.scored) {
        entry["precision"] = row.score.precision;
        entry["recall"] = row.score.recall;
        entry["f1"] = row.score.f1;
        entry["no_predictions"] = row.score.no_predictions;
        entry["tp"] = row.score.tp;
        entry["fp"] = row.score.fp;
        entry["fn"] = row.score.fn;
      }
      doc["relationships"].push_back(entry);
    }
    doc["systematicness"] = outcome.coverage.systematicness;
    doc["completeness"] = outcome.coverage.completeness;
    doc["total_edges"] = outcome.coverage.total_edges;
    doc["profiled_edges"] = outcome.coverage.profiled_edges;
    doc["multi_edges"] = outcome.coverage.multi_edges;
    std::ofstream report(options.report_path);
    if (!report) {
      throw ParseError(options.report_path, 0, "cannot open file for writing");
    }
    report << doc.dump(2) << '\n';
  }
  return outcome;
}

void run_paths(const PathsOptions& options, std::ostream& out) {
  const auto edge_records = read_edge_file(options.edges_path);
  const Graph graph = Graph::build(edge_records, nullptr, options.edges_path);
  auto source = graph.index_of(options.source_id);
  if (!source) {
    throw ParseError(options.edges_path, 0,
                     "unknown node '" + options.source_id + "'");
  }
  if (options.k_max < 0) throw ConfigError("k must be non-negative");

  const PathSet paths = find_paths(graph, *source, options.k_max);
  std::vector<std::vector<std::string>> rows;
  for (const auto& bucket : paths.by_target) {
    for (const PathDescriptor& p : bucket) {
      std::vector<std::string> ids;
      ids.reserve(p.nodes.size());
      for (NodeIndex u : p.nodes) ids.push_back(graph.id_of(u));
      rows.push_back(std::move(ids));
    }
  }
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

}  // namespace affinity

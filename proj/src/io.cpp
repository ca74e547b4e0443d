#include "affinity/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "affinity/errors.hpp"

namespace affinity {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path, 0, "cannot open file for writing");
  return out;
}

double parse_weight(const std::string& text, const std::string& path, int line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(path, line, "expected a weight, got '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_tabs(const std::string& raw) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = raw.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(raw.substr(start));
      return fields;
    }
    fields.push_back(raw.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", w);
  return buf;
}

void write_relationship_file(const std::string& path, const Graph& graph,
                             const AffinityGraphs& aff, std::size_t m) {
  std::ofstream out = open_out(path);
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.endpoints(e);
    out << graph.id_of(u) << '\t' << graph.id_of(v) << '\t'
        << format_weight(aff.weight(e, m)) << '\n';
  }
}

void write_combined_file(const std::string& path, const Graph& graph,
                         const AffinityGraphs& aff,
                         const std::vector<std::string>& names) {
  std::ofstream out = open_out(path);
  out << "id_u\tid_v";
  for (const std::string& name : names) out << '\t' << name;
  out << '\n';
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.endpoints(e);
    out << graph.id_of(u) << '\t' << graph.id_of(v);
    for (std::size_t m = 0; m < aff.relationship_count(); ++m) {
      out << '\t' << format_weight(aff.weight(e, m));
    }
    out << '\n';
  }
}

AffinityGraphs read_combined_file(const std::string& path, const Graph& graph,
                                  const std::vector<std::string>& names) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  std::string raw;
  if (!std::getline(in, raw)) throw ParseError(path, 0, "empty file");
  std::vector<std::string> header = split_tabs(raw);
  if (header.size() != names.size() + 2 || header[0] != "id_u" ||
      header[1] != "id_v") {
    throw ParseError(path, 1, "malformed header");
  }
  std::vector<std::size_t> order(names.size());
  for (std::size_t col = 0; col < names.size(); ++col) {
    auto it = std::find(names.begin(), names.end(), header[col + 2]);
    if (it == names.end()) {
      throw ParseError(path, 1, "header names unknown relationship '" +
                                    header[col + 2] + "'");
    }
    order[col] = static_cast<std::size_t>(it - names.begin());
  }

  AffinityGraphs aff(graph.edge_count(), names.size());
  std::vector<std::uint8_t> seen(graph.edge_count(), 0);
  int line = 1;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty()) continue;
    std::vector<std::string> fields = split_tabs(raw);
    if (fields.size() != names.size() + 2) {
      throw ParseError(path, line, "expected " + std::to_string(names.size() + 2) +
                                       " fields");
    }
    auto u = graph.index_of(fields[0]);
    auto v = graph.index_of(fields[1]);
    auto e = (u && v) ? graph.edge_between(*u, *v) : std::nullopt;
    if (!e) {
      throw ParseError(path, line,
                       "no such edge: " + fields[0] + " " + fields[1]);
    }
    for (std::size_t col = 0; col < names.size(); ++col) {
      aff.set_weight(*e, order[col], parse_weight(fields[col + 2], path, line));
    }
    seen[*e] = 1;
  }
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    if (!seen[e]) {
      auto [u, v] = graph.endpoints(e);
      throw ParseError(path, 0, "no weights for edge " + graph.id_of(u) + " " +
                                    graph.id_of(v));
    }
  }
  return aff;
}

void write_pairs_dump(std::ostream& out, const SimilarityPairs& pairs,
                      const Graph& graph,
                      const std::vector<std::string>& names) {
  for (std::size_t m = 0; m < pairs.per_relationship.size(); ++m) {
    for (const ScoredPair& p : pairs.per_relationship[m]) {
      out << names[m] << '\t' << graph.id_of(p.i) << '\t' << graph.id_of(p.j)
          << '\t' << format_weight(p.f) << '\n';
    }
  }
}

LabelSet read_label_file(const std::string& path, const Graph& graph,
                         const std::vector<std::string>& names) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");

  LabelSet labels;
  std::vector<std::string> unknown;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty() || raw[0] == '#') continue;
    std::vector<std::string> fields = split_tabs(raw);
    if (fields.size() != 3) {
      throw ParseError(path, line, "expected id_u<TAB>id_v<TAB>relationships");
    }
    std::vector<std::size_t> rels;
    std::stringstream list(fields[2]);
    std::string name;
    while (std::getline(list, name, ',')) {
      auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) {
        throw ParseError(path, line, "unknown relationship '" + name + "'");
      }
      rels.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    if (rels.empty()) throw ParseError(path, line, "no relationships listed");
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());

    auto u = graph.index_of(fields[0]);
    auto v = graph.index_of(fields[1]);
    auto e = (u && v) ? graph.edge_between(*u, *v) : std::nullopt;
    if (!e) {
      unknown.push_back(fields[0] + " " + fields[1]);
      continue;
    }
    labels.entries.push_back({*e, std::move(rels)});
  }

  if (!unknown.empty()) {
    throw UnknownLabelEdges(path + ": " + std::to_string(unknown.size()) +
                                " labeled pair(s) are not edges of the graph",
                            std::move(unknown));
  }
  if (labels.empty()) throw ParseError(path, 0, "empty label file");
  return labels;
}

void write_fit_report(std::ostream& out, const FitReport& report,
                      bool deterministic) {
  auto seconds = [&](double s) -> std::string {
    if (deterministic) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", s);
    return buf;
  };

  out << "constrained_pairs\t" << report.constrained_pairs << '\n'
      << "skipped_pairs\t" << report.skipped_pairs << '\n'
      << "truncation_bound\t" << format_weight(report.truncation_bound) << '\n'
      << "converged\t" << (report.converged ? "true" : "false") << '\n'
      << "stalled\t" << (report.stalled ? "true" : "false") << '\n'
      << "accepted_iterations\t" << report.accepted_iterations() << '\n'
      << "simplex_violations\t" << report.simplex_violations << '\n'
      << "cache_hits\t" << report.cache.hits << '\n'
      << "cache_misses\t" << report.cache.misses << '\n'
      << "cache_evictions\t" << report.cache.evictions << '\n'
      << "path_seconds\t" << seconds(report.path_seconds) << '\n'
      << "ascent_seconds\t" << seconds(report.ascent_seconds) << '\n';
  if (report.no_constrained_pairs) out << "warning\tno constrained pairs\n";
  if (report.all_pairs_pathless) {
    out << "warning\tno constrained pair is connected within k; weights stay uniform\n";
  }
  out << "iter\tobjective\tstep\n";
  for (std::size_t t = 0; t < report.iterations.size(); ++t) {
    out << t << '\t' << format_weight(report.iterations[t].objective) << '\t';
    if (t == 0) {
      out << '-';
    } else {
      out << format_weight(report.iterations[t].step);
    }
    out << '\n';
  }
}

}  // namespace affinity

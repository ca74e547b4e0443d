#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace affinity {

/// Input file could not be parsed. Carries the source name and 1-based line
/// so callers can point at the offending record.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Run configuration is structurally valid but semantically unusable,
/// e.g. relationship_count * epsilon > 1 leaves no room on the simplex.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input was readable but the run cannot produce anything useful,
/// e.g. no attribute pair constrains any relationship.
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A label file mentioned node pairs that are not edges of the graph.
class UnknownLabelEdges : public std::runtime_error {
 public:
  UnknownLabelEdges(const std::string& what, std::vector<std::string> edges)
      : std::runtime_error(what), edges_(std::move(edges)) {}

  const std::vector<std::string>& edges() const { return edges_; }

 private:
  std::vector<std::string> edges_;
};

}  // namespace affinity

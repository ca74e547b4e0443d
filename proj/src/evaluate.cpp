#include "affinity/evaluate.hpp"

#include <algorithm>
#include <stdexcept>

namespace affinity {

PredictionSet threshold_predictions(const AffinityGraphs& aff,
                                    std::span<const double> thresholds) {
  if (thresholds.size() != aff.relationship_count()) {
    throw std::invalid_argument("threshold_predictions: one threshold per relationship");
  }
  for (double t : thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw std::invalid_argument("threshold_predictions: thresholds must lie in [0, 1]");
    }
  }
  PredictionSet out;
  out.relationship_count = aff.relationship_count();
  out.predicted.assign(aff.edge_count() * out.relationship_count, 0);
  for (EdgeIndex e = 0; e < aff.edge_count(); ++e) {
    for (std::size_t m = 0; m < out.relationship_count; ++m) {
      out.predicted[std::size_t{e} * out.relationship_count + m] =
          aff.weight(e, m) >= thresholds[m] ? 1 : 0;
    }
  }
  return out;
}

PrfScore score_prf(const PredictionSet& predictions, const LabelSet& gold,
                   std::size_t m) {
  PrfScore s;
  for (const LabelSet::Entry& entry : gold.entries) {
    const bool truth = std::binary_search(entry.relationships.begin(),
                                          entry.relationships.end(), m);
    const bool pred = predictions.at(entry.edge, m);
    if (truth && pred) ++s.tp;
    if (!truth && pred) ++s.fp;
    if (truth && !pred) ++s.fn;
  }
  if (s.tp + s.fn == 0) {
    throw std::invalid_argument("score_prf: labels contain no positive for this relationship");
  }
  if (s.tp + s.fp == 0) {
    s.no_predictions = true;
    s.precision = 0.0;
  } else {
    s.precision = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fp);
  }
  s.recall = static_cast<double>(s.tp) / static_cast<double>(s.tp + s.fn);
  s.f1 = (s.precision + s.recall) > 0.0
             ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
             : 0.0;
  return s;
}

CoverageScore coverage(const PredictionSet& predictions, const Graph& graph) {
  CoverageScore c;
  c.total_edges = graph.edge_count();
  for (EdgeIndex e = 0; e < graph.edge_count(); ++e) {
    std::size_t hits = 0;
    for (std::size_t m = 0; m < predictions.relationship_count; ++m) {
      if (predictions.at(e, m)) ++hits;
    }
    if (hits >= 1) ++c.profiled_edges;
    if (hits >= 2) ++c.multi_edges;
  }
  c.systematicness = c.total_edges > 0 ? static_cast<double>(c.profiled_edges) /
                                             static_cast<double>(c.total_edges)
                                       : 0.0;
  c.completeness = c.profiled_edges > 0
                       ? static_cast<double>(c.multi_edges) /
                             static_cast<double>(c.profiled_edges)
                       : 0.0;
  return c;
}

}  // namespace affinity

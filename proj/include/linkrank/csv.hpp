#pragma once

#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "linkrank/metrics.hpp"
#include "linkrank/solver.hpp"
#include "linkrank/weights.hpp"

namespace linkrank {

// Round-trippable decimal form.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_trace_csv(std::ostream& os, const ConvergenceTrace& trace) {
  os << "iter,residual,mults,adds,elapsed_ms\n";
  for (const IterationRecord& r : trace.records)
    os << r.iteration << ',' << format_double(r.residual) << ',' << r.mults
       << ',' << r.adds << ',' << format_double(r.elapsed_ms) << '\n';
}

// Best score first; equal scores ordered by ascending id.
inline void write_scores_csv(std::ostream& os, std::span<const double> scores) {
  os << "id,score\n";
  for (std::size_t id : top_k_indices(scores, scores.size()))
    os << id << ',' << format_double(scores[id]) << '\n';
}

inline void write_weights_csv(std::ostream& os, const WeightDiagonals& w) {
  os << "id,ca,ch\n";
  for (std::size_t i = 0; i < w.ca.size(); ++i)
    os << i << ',' << format_double(w.ca[i]) << ',' << format_double(w.ch[i])
       << '\n';
}

struct CompareRow {
  std::string pair;
  double cosine = 0.0;
  std::optional<double> spearman;
};

inline void write_compare_csv(std::ostream& os,
                              std::span<const CompareRow> rows) {
  os << "pair,cosine,spearman\n";
  for (const CompareRow& r : rows) {
    os << r.pair << ',' << format_double(r.cosine) << ',';
    os << (r.spearman ? format_double(*r.spearman) : std::string("n/a"));
    os << '\n';
  }
}

}  // namespace linkrank

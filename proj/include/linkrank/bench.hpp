#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linkrank/csv.hpp"
#include "linkrank/graph.hpp"
#include "linkrank/solver.hpp"
#include "linkrank/synth.hpp"
#include "linkrank/weights.hpp"

namespace linkrank {

struct BenchCell {
  std::string name;
  std::optional<std::string> graph_path;  // exactly one of graph_path / synth
  std::optional<SynthSpec> synth;
  bool back_button = false;
  std::vector<Algorithm> algorithms;
  SolverConfig config;
  std::size_t repetitions = 1;
};

struct BenchPlan {
  std::vector<BenchCell> cells;
};

namespace detail {

inline double parse_double_value(std::string_view sv, std::size_t lineno) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
  if (ec != std::errc{} || p != sv.data() + sv.size())
    parse_fail(lineno, "expected a number");
  return out;
}

inline std::uint64_t parse_count_value(std::string_view sv, std::size_t lineno) {
  const auto v = parse_u64(sv);
  if (!v) parse_fail(lineno, "expected a nonnegative integer");
  return *v;
}

inline bool parse_bool_value(std::string_view sv, std::size_t lineno) {
  if (sv == "true" || sv == "1") return true;
  if (sv == "false" || sv == "0") return false;
  parse_fail(lineno, "expected true or false");
  return false;
}

inline bool valid_cell_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

// Plan format: one "[cell-name]" section per cell, followed by key = value
// lines. Keys: graph (path) or synth_n / synth_avg_degree / synth_in_exponent
// / synth_out_exponent / synth_dangling / synth_seed; back_button; algos
// (comma-separated); eps; max_iter; alpha; zeta; reps. '#' starts a comment.
inline BenchPlan parse_bench_plan(std::istream& in) {
  BenchPlan plan;
  BenchCell* cell = nullptr;
  bool cell_has_synth_key = false;
  std::string line;
  std::size_t lineno = 0;

  auto finish_cell = [&](std::size_t at) {
    if (!cell) return;
    if (cell->algorithms.empty())
      detail::parse_fail(at, "cell [" + cell->name + "] lists no algorithms");
    if (cell->graph_path && cell_has_synth_key)
      detail::parse_fail(at, "cell [" + cell->name +
                                 "] mixes graph and synth_* keys");
    if (!cell->graph_path && !cell_has_synth_key)
      detail::parse_fail(at, "cell [" + cell->name +
                                 "] needs a graph or synth_* keys");
    if (cell_has_synth_key) {
      if (cell->synth->n == 0)
        detail::parse_fail(at, "cell [" + cell->name + "] is missing synth_n");
    } else {
      cell->synth.reset();
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    if (sv.front() == '[') {
      if (sv.back() != ']') detail::parse_fail(lineno, "unterminated [section]");
      const std::string_view name = detail::trim(sv.substr(1, sv.size() - 2));
      if (!detail::valid_cell_name(name))
        detail::parse_fail(lineno,
                           "cell names may use letters, digits, '_', '-'");
      finish_cell(lineno);
      plan.cells.push_back({});
      cell = &plan.cells.back();
      cell->name = std::string(name);
      cell->synth = SynthSpec{};
      cell_has_synth_key = false;
      continue;
    }
    if (!cell) detail::parse_fail(lineno, "key outside any [section]");
    const std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      detail::parse_fail(lineno, "expected key = value");
    const std::string_view key = detail::trim(sv.substr(0, eq));
    const std::string_view value = detail::trim(sv.substr(eq + 1));
    if (value.empty()) detail::parse_fail(lineno, "empty value");

    if (key == "graph") {
      cell->graph_path = std::string(value);
    } else if (key == "synth_n") {
      cell->synth->n = detail::parse_count_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "synth_avg_degree") {
      cell->synth->target_avg_degree = detail::parse_double_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "synth_in_exponent") {
      cell->synth->in_exponent = detail::parse_double_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "synth_out_exponent") {
      cell->synth->out_exponent = detail::parse_double_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "synth_dangling") {
      cell->synth->dangling_fraction = detail::parse_double_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "synth_seed") {
      cell->synth->seed = detail::parse_count_value(value, lineno);
      cell_has_synth_key = true;
    } else if (key == "back_button") {
      cell->back_button = detail::parse_bool_value(value, lineno);
    } else if (key == "algos") {
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view tok = detail::trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{}
                                               : rest.substr(comma + 1);
        if (tok.empty()) continue;
        const auto algo = parse_algorithm(tok);
        if (!algo)
          detail::parse_fail(lineno, "unknown algorithm '" + std::string(tok) +
                                         "' (hits|ahits|ahits-pos|pagerank)");
        cell->algorithms.push_back(*algo);
      }
    } else if (key == "eps") {
      cell->config.epsilon = detail::parse_double_value(value, lineno);
    } else if (key == "max_iter") {
      cell->config.max_iter =
          static_cast<std::size_t>(detail::parse_count_value(value, lineno));
    } else if (key == "alpha") {
      cell->config.alpha = detail::parse_double_value(value, lineno);
    } else if (key == "zeta") {
      cell->config.zeta = detail::parse_double_value(value, lineno);
    } else if (key == "reps") {
      cell->repetitions =
          static_cast<std::size_t>(detail::parse_count_value(value, lineno));
      if (cell->repetitions < 1)
        detail::parse_fail(lineno, "reps must be at least 1");
    } else {
      detail::parse_fail(lineno, "unknown key '" + std::string(key) + "'");
    }
  }
  finish_cell(lineno == 0 ? 1 : lineno);
  if (plan.cells.empty())
    throw std::runtime_error("bench plan defines no cells");
  return plan;
}

namespace detail {

struct SummaryRow {
  std::string cell;
  std::string algorithm;
  std::string graph;
  std::size_t n = 0;
  std::uint64_t nnz = 0;
  std::size_t iterations = 0;
  std::string termination = "-";
  double final_residual = 0.0;
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;
  double median_ms = 0.0;
  std::string status = "ok";
};

inline std::string csv_safe(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return s;
}

inline std::string graph_descriptor(const BenchCell& cell) {
  if (cell.graph_path) return *cell.graph_path;
  std::ostringstream os;
  os << "synth(n=" << cell.synth->n << " ad=" << cell.synth->target_avg_degree
     << " df=" << cell.synth->dangling_fraction << " seed=" << cell.synth->seed
     << ")";
  return os.str();
}

inline ConvergenceTrace run_cell_algorithm(Algorithm algo, const WebGraph& g,
                                           const WeightDiagonals& w,
                                           const SolverConfig& cfg) {
  switch (algo) {
    case Algorithm::hits: return run_hits(g, cfg).trace;
    case Algorithm::accelerated_hits:
      return run_accelerated_hits(g, w, cfg).trace;
    case Algorithm::accelerated_hits_positive:
      return run_accelerated_hits_positive(g, w, cfg).trace;
    case Algorithm::pagerank: return run_pagerank(g, cfg).trace;
  }
  throw std::invalid_argument("unknown algorithm");
}

inline std::vector<SummaryRow> run_cell(const BenchCell& cell,
                                        const std::filesystem::path& out_dir) {
  std::vector<SummaryRow> rows;
  const std::string graph_desc = csv_safe(graph_descriptor(cell));
  auto fail_all = [&](const std::string& why) {
    for (Algorithm algo : cell.algorithms) {
      SummaryRow row;
      row.cell = cell.name;
      row.algorithm = std::string(algorithm_name(algo));
      row.graph = graph_desc;
      row.status = csv_safe("error: " + why);
      rows.push_back(std::move(row));
    }
    return rows;
  };

  WebGraph g;
  try {
    g = cell.graph_path ? load_graph_file(*cell.graph_path)
                        : generate(*cell.synth);
    if (cell.back_button) g = back_button_transform(g);
  } catch (const std::exception& e) {
    return fail_all(e.what());
  }
  const WeightDiagonals w = compute_weights(g);

  for (Algorithm algo : cell.algorithms) {
    SummaryRow row;
    row.cell = cell.name;
    row.algorithm = std::string(algorithm_name(algo));
    row.graph = graph_desc;
    row.n = g.node_count();
    row.nnz = g.edge_count();
    try {
      std::vector<double> elapsed;
      for (std::size_t rep = 1; rep <= cell.repetitions; ++rep) {
        const ConvergenceTrace trace = run_cell_algorithm(algo, g, w, cell.config);
        if (rep == 1) {
          row.iterations = trace.iterations;
          row.termination = std::string(termination_name(trace.termination));
          row.final_residual = trace.final_residual();
          row.mults = trace.records.empty() ? 0 : trace.records.back().mults;
          row.adds = trace.records.empty() ? 0 : trace.records.back().adds;
        } else if (trace.iterations != row.iterations) {
          throw std::runtime_error("iteration count varies across repetitions");
        }
        elapsed.push_back(trace.elapsed_ms());
        const std::filesystem::path trace_path =
            out_dir / (cell.name + "-" + std::string(algorithm_name(algo)) +
                       "-rep" + std::to_string(rep) + ".csv");
        std::ofstream tf(trace_path);
        if (!tf) throw std::runtime_error("cannot write " + trace_path.string());
        write_trace_csv(tf, trace);
      }
      std::sort(elapsed.begin(), elapsed.end());
      const std::size_t m = elapsed.size();
      row.median_ms = (m % 2 == 1)
                          ? elapsed[m / 2]
                          : 0.5 * (elapsed[m / 2 - 1] + elapsed[m / 2]);
    } catch (const std::exception& e) {
      row.status = csv_safe(std::string("error: ") + e.what());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

// Executes every (graph x algorithm x repetition) cell, writing one trace CSV
// per run plus summary.csv. Failed cells become error rows; the run continues.
// Returns true iff every row is ok.
inline bool run_bench(const BenchPlan& plan,
                      const std::filesystem::path& out_dir, bool parallel,
                      std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::vector<detail::SummaryRow>> results(plan.cells.size());
  if (parallel) {
    std::vector<std::future<std::vector<detail::SummaryRow>>> futures;
    futures.reserve(plan.cells.size());
    for (const BenchCell& cell : plan.cells)
      futures.push_back(std::async(std::launch::async, detail::run_cell,
                                   std::cref(cell), std::cref(out_dir)));
    for (std::size_t i = 0; i < futures.size(); ++i)
      results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < plan.cells.size(); ++i)
      results[i] = detail::run_cell(plan.cells[i], out_dir);
  }

  const std::filesystem::path summary_path = out_dir / "summary.csv";
  std::ofstream sf(summary_path);
  if (!sf) throw std::runtime_error("cannot write " + summary_path.string());
  sf << "cell,algorithm,graph,n,nnz,K,termination,final_residual,total_mults,"
        "total_adds,median_ms,status\n";
  bool ok = true;
  for (const auto& rows : results) {
    for (const detail::SummaryRow& row : rows) {
      sf << row.cell << ',' << row.algorithm << ',' << row.graph << ','
         << row.n << ',' << row.nnz << ',' << row.iterations << ','
         << row.termination << ',' << format_double(row.final_residual) << ','
         << row.mults << ',' << row.adds << ','
         << format_double(row.median_ms) << ',' << row.status << '\n';
      if (row.status != "ok") ok = false;
      log << row.cell << ' ' << row.algorithm << ": ";
      if (row.status == "ok")
        log << "K=" << row.iterations << " (" << row.termination
            << ") residual=" << row.final_residual
            << " median_ms=" << row.median_ms << '\n';
      else
        log << row.status << '\n';
    }
  }
  return ok;
}

}  // namespace linkrank

// Command-line front end: ingest or generate graphs, run the ranking
// solvers, compare score vectors, and drive benchmark sweeps.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <streambuf>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linkrank/bench.hpp"
#include "linkrank/csv.hpp"
#include "linkrank/graph.hpp"
#include "linkrank/metrics.hpp"
#include "linkrank/solver.hpp"
#include "linkrank/synth.hpp"
#include "linkrank/weights.hpp"

namespace {

struct NullBuffer : std::streambuf {
  int overflow(int c) override { return c; }
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

void print_stats(std::ostream& os, const linkrank::GraphStats& s) {
  os << "nodes " << s.n << '\n';
  os << "edges " << s.nnz << '\n';
  os << "%DP " << fixed(s.dangling_percent, 1) << '\n';
  os << "AD " << fixed(s.average_degree, 2) << '\n';
  for (std::size_t t = 0; t < linkrank::GraphStats::thresholds.size(); ++t)
    os << "fi>" << fixed(linkrank::GraphStats::thresholds[t], 1) << ' '
       << fixed(s.fi_fraction[t], 4) << '\n';
  for (std::size_t t = 0; t < linkrank::GraphStats::thresholds.size(); ++t)
    os << "fo>" << fixed(linkrank::GraphStats::thresholds[t], 1) << ' '
       << fixed(s.fo_fraction[t], 4) << '\n';
}

void print_top(std::ostream& os, const char* label,
               const std::vector<double>& values, std::size_t k) {
  k = std::min(k, values.size());
  os << "top " << label << ":\n";
  for (std::size_t id : linkrank::top_k_indices(values, k))
    os << "  " << id << ' ' << linkrank::format_double(values[id]) << '\n';
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return 2;
}

linkrank::WebGraph load_input(const std::string& path, bool back_button) {
  linkrank::WebGraph g = linkrank::load_graph_file(path);
  if (back_button) g = linkrank::back_button_transform(g);
  return g;
}

int cmd_stats(const std::string& path, bool back_button) {
  const linkrank::WebGraph g = load_input(path, back_button);
  print_stats(std::cout, linkrank::compute_stats(g));
  return 0;
}

struct RankFlags {
  bool back_button = false;
  bool dump_weights = false;
  std::size_t top = 0;
};

int cmd_rank(const std::string& path, linkrank::Algorithm algo,
             const linkrank::SolverConfig& cfg, const RankFlags& flags,
             const std::filesystem::path& out_dir, std::ostream& out) {
  const linkrank::WebGraph g = load_input(path, flags.back_button);
  std::filesystem::create_directories(out_dir);
  const std::string base(linkrank::algorithm_name(algo));

  linkrank::WeightDiagonals w;
  if (algo != linkrank::Algorithm::hits) w = linkrank::compute_weights(g);

  linkrank::ConvergenceTrace trace;
  if (algo == linkrank::Algorithm::pagerank) {
    const linkrank::PageRankResult r = linkrank::run_pagerank(g, cfg);
    trace = r.trace;
    auto f = open_out(out_dir / (base + "-scores.csv"));
    linkrank::write_scores_csv(f, r.scores.values);
    if (flags.top > 0) print_top(out, "pages", r.scores.values, flags.top);
  } else {
    linkrank::HitsResult r;
    switch (algo) {
      case linkrank::Algorithm::hits: r = linkrank::run_hits(g, cfg); break;
      case linkrank::Algorithm::accelerated_hits:
        r = linkrank::run_accelerated_hits(g, w, cfg);
        break;
      default:
        r = linkrank::run_accelerated_hits_positive(g, w, cfg);
        break;
    }
    trace = r.trace;
    auto fa = open_out(out_dir / (base + "-authority.csv"));
    linkrank::write_scores_csv(fa, r.authority.values);
    auto fh = open_out(out_dir / (base + "-hub.csv"));
    linkrank::write_scores_csv(fh, r.hub.values);
    if (r.hub.norm == linkrank::Norm::none)
      out << "note: hub vector is degenerate (all zero)\n";
    if (flags.top > 0) {
      print_top(out, "authority", r.authority.values, flags.top);
      print_top(out, "hub", r.hub.values, flags.top);
    }
  }
  if (flags.dump_weights) {
    auto fw = open_out(out_dir / (base + "-weights.csv"));
    linkrank::write_weights_csv(fw, w);
  }
  auto ft = open_out(out_dir / (base + "-trace.csv"));
  linkrank::write_trace_csv(ft, trace);

  out << "K=" << trace.iterations << " termination="
      << linkrank::termination_name(trace.termination)
      << " residual=" << linkrank::format_double(trace.final_residual())
      << " elapsed_ms=" << fixed(trace.elapsed_ms(), 3) << '\n';
  return 0;
}

int cmd_compare(const std::string& path, bool back_button,
                const linkrank::SolverConfig& cfg,
                const std::filesystem::path& out_dir, std::ostream& out) {
  const linkrank::WebGraph g = load_input(path, back_button);
  const linkrank::WeightDiagonals w = linkrank::compute_weights(g);
  const linkrank::HitsResult plain = linkrank::run_hits(g, cfg);
  const linkrank::HitsResult weighted = linkrank::run_accelerated_hits(g, w, cfg);

  std::vector<double> indeg(g.node_count()), outdeg(g.node_count());
  for (linkrank::NodeId i = 0; i < g.node_count(); ++i) {
    indeg[i] = static_cast<double>(g.indeg(i));
    outdeg[i] = static_cast<double>(g.outdeg(i));
  }

  auto row = [](std::string name, const std::vector<double>& a,
                const std::vector<double>& b) {
    linkrank::CompareRow r;
    r.pair = std::move(name);
    r.cosine = linkrank::cosine(a, b);
    try {
      r.spearman = linkrank::spearman(a, b);
    } catch (const std::domain_error&) {
      r.spearman.reset();
    }
    return r;
  };
  const std::vector<linkrank::CompareRow> rows = {
      row("authority", plain.authority.values, weighted.authority.values),
      row("hub", plain.hub.values, weighted.hub.values),
      row("authority-vs-indegree", plain.authority.values, indeg),
      row("hub-vs-outdegree", plain.hub.values, outdeg),
  };

  std::filesystem::create_directories(out_dir);
  auto f = open_out(out_dir / "compare.csv");
  linkrank::write_compare_csv(f, rows);
  for (const linkrank::CompareRow& r : rows)
    out << r.pair << " cosine=" << fixed(r.cosine, 6) << " spearman="
        << (r.spearman ? fixed(*r.spearman, 6) : std::string("n/a")) << '\n';
  return 0;
}

int cmd_bench(const std::string& plan_path, bool parallel,
              const std::filesystem::path& out_dir, std::ostream& out) {
  std::ifstream in(plan_path);
  if (!in) throw std::runtime_error("cannot open " + plan_path);
  const linkrank::BenchPlan plan = linkrank::parse_bench_plan(in);
  const bool ok = linkrank::run_bench(plan, out_dir, parallel, out);
  out << "summary: " << (out_dir / "summary.csv").string() << '\n';
  return ok ? 0 : 1;
}

int cmd_gen(const linkrank::SynthSpec& spec, const std::string& out_path,
            std::ostream& out) {
  const linkrank::WebGraph g = linkrank::generate(spec);
  auto f = open_out(out_path);
  linkrank::serialize_edge_list(g, f);
  print_stats(out, linkrank::compute_stats(g));
  out << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse web-graph link-analysis toolkit"};
  app.require_subcommand(1);
  bool quiet = false;
  std::string output_dir = ".";
  app.add_flag("--quiet", quiet, "suppress informational output");
  app.add_option("--output-dir", output_dir, "directory for emitted files");

  auto* stats = app.add_subcommand("stats", "print graph statistics");
  stats->fallthrough();
  std::string stats_graph;
  bool stats_bb = false;
  stats->add_option("graph", stats_graph, "edge-list or .bin graph file")
      ->required();
  stats->add_flag("--back-button", stats_bb,
                  "apply the back-button transform first");

  auto* rank = app.add_subcommand("rank", "run a ranking algorithm");
  rank->fallthrough();
  std::string rank_graph, rank_algo;
  RankFlags rank_flags;
  linkrank::SolverConfig rank_cfg;
  rank->add_option("graph", rank_graph, "edge-list or .bin graph file")
      ->required();
  rank->add_option("algo", rank_algo, "hits|ahits|ahits-pos|pagerank")
      ->required();
  rank->add_flag("--back-button", rank_flags.back_button,
                 "apply the back-button transform first");
  rank->add_option("--eps", rank_cfg.epsilon, "residual threshold");
  rank->add_option("--max-iter", rank_cfg.max_iter, "iteration cap");
  rank->add_option("--alpha", rank_cfg.alpha, "pagerank damping");
  rank->add_option("--zeta", rank_cfg.zeta, "positive-variant hyperlink share");
  rank->add_option("--top", rank_flags.top, "print the top K scores");
  rank->add_flag("--dump-weights", rank_flags.dump_weights,
                 "also write the diagonal weights CSV");

  auto* compare = app.add_subcommand(
      "compare", "similarity report between plain and weighted solutions");
  compare->fallthrough();
  std::string cmp_graph;
  bool cmp_bb = false;
  linkrank::SolverConfig cmp_cfg;
  compare->add_option("graph", cmp_graph, "edge-list or .bin graph file")
      ->required();
  compare->add_flag("--back-button", cmp_bb,
                    "apply the back-button transform first");
  compare->add_option("--eps", cmp_cfg.epsilon, "residual threshold");
  compare->add_option("--max-iter", cmp_cfg.max_iter, "iteration cap");

  auto* bench = app.add_subcommand("bench", "run a benchmark plan");
  bench->fallthrough();
  std::string plan_path;
  bool parallel = false;
  bench->add_option("plan", plan_path, "benchmark plan file")->required();
  bench->add_flag("--parallel", parallel, "run cells concurrently");

  auto* gen = app.add_subcommand("gen", "generate a synthetic graph");
  gen->fallthrough();
  linkrank::SynthSpec spec;
  std::string gen_out;
  gen->add_option("out", gen_out, "output edge-list path")->required();
  gen->add_option("--n", spec.n, "node count")->required();
  gen->add_option("--avg-degree", spec.target_avg_degree,
                  "target average degree");
  gen->add_option("--in-exponent", spec.in_exponent, "in-degree tail exponent");
  gen->add_option("--out-exponent", spec.out_exponent,
                  "out-degree tail exponent");
  gen->add_option("--dangling", spec.dangling_fraction,
                  "fraction of pages with no outlinks");
  gen->add_option("--seed", spec.seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  NullBuffer null_buffer;
  std::ostream null_stream(&null_buffer);
  std::ostream& out = quiet ? null_stream : std::cout;
  const std::filesystem::path out_dir(output_dir);

  try {
    if (stats->parsed()) return cmd_stats(stats_graph, stats_bb);
    if (rank->parsed()) {
      const auto algo = linkrank::parse_algorithm(rank_algo);
      if (!algo)
        return usage_error("unknown algorithm '" + rank_algo +
                           "' (hits|ahits|ahits-pos|pagerank)");
      if (rank->count("--alpha") > 0 && *algo != linkrank::Algorithm::pagerank)
        return usage_error("--alpha only applies to pagerank");
      if (rank->count("--zeta") > 0 &&
          *algo != linkrank::Algorithm::accelerated_hits_positive)
        return usage_error("--zeta only applies to ahits-pos");
      if (rank_flags.dump_weights &&
          (*algo == linkrank::Algorithm::hits ||
           *algo == linkrank::Algorithm::pagerank))
        return usage_error("--dump-weights applies to ahits and ahits-pos");
      return cmd_rank(rank_graph, *algo, rank_cfg, rank_flags, out_dir, out);
    }
    if (compare->parsed())
      return cmd_compare(cmp_graph, cmp_bb, cmp_cfg, out_dir, out);
    if (bench->parsed()) return cmd_bench(plan_path, parallel, out_dir, out);
    if (gen->parsed()) return cmd_gen(spec, gen_out, out);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

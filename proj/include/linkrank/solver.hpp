#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linkrank/graph.hpp"
#include "linkrank/numeric.hpp"
#include "linkrank/weights.hpp"

namespace linkrank {

enum class Norm {
  none,  // degenerate results only (e.g. an all-zero hub vector)
  one,
};

struct RankVector {
  std::vector<double> values;
  Norm norm = Norm::one;
};

enum class Algorithm {
  hits,
  accelerated_hits,
  accelerated_hits_positive,
  pagerank,
};

inline std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::hits: return "hits";
    case Algorithm::accelerated_hits: return "ahits";
    case Algorithm::accelerated_hits_positive: return "ahits-pos";
    case Algorithm::pagerank: return "pagerank";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "hits") return Algorithm::hits;
  if (name == "ahits") return Algorithm::accelerated_hits;
  if (name == "ahits-pos") return Algorithm::accelerated_hits_positive;
  if (name == "pagerank") return Algorithm::pagerank;
  return std::nullopt;
}

struct SolverConfig {
  double epsilon = 1e-10;      // residual threshold
  std::size_t max_iter = 10000;
  double alpha = 0.85;         // pagerank damping, in (0,1)
  double zeta = 0.99;          // positive-variant hyperlink share, in (0,1)
  // Starting vector (hub for the hits family, authority for the positive
  // variant, score vector for pagerank). 1-normalized on entry; uniform
  // when absent.
  std::optional<std::vector<double>> start;

  void validate() const {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must be in (0,1)");
    if (!(zeta > 0.0 && zeta < 1.0))
      throw std::invalid_argument("zeta must be in (0,1)");
  }
};

struct IterationRecord {
  std::size_t iteration = 0;   // k, 1-based
  double residual = 0.0;       // 1-norm distance between successive iterates
  std::uint64_t mults = 0;     // cumulative abstract multiplications
  std::uint64_t adds = 0;      // cumulative abstract additions
  double elapsed_ms = 0.0;     // wall time since solver start
};

enum class Termination { converged, max_iter };

inline std::string_view termination_name(Termination t) {
  return t == Termination::converged ? "converged" : "max_iter";
}

struct ConvergenceTrace {
  std::vector<IterationRecord> records;
  std::size_t iterations = 0;  // K
  Termination termination = Termination::converged;

  double final_residual() const {
    return records.empty() ? 0.0 : records.back().residual;
  }
  double elapsed_ms() const {
    return records.empty() ? 0.0 : records.back().elapsed_ms;
  }
};

struct HitsResult {
  RankVector authority;
  RankVector hub;
  ConvergenceTrace trace;
};

struct PageRankResult {
  RankVector scores;
  ConvergenceTrace trace;
};

// Abstract per-iteration operation counts. These tally the algorithms'
// logical multiplications and additions (a normalization division counts
// as a multiplication), not machine flops; residual evaluation and any
// one-off work outside the loop are not charged.
struct CostModel {
  std::uint64_t mults = 0;
  std::uint64_t adds = 0;
  friend bool operator==(const CostModel&, const CostModel&) = default;
};

inline CostModel count_costs(Algorithm algorithm, const WebGraph& g) {
  const std::uint64_t n = g.node_count();
  const std::uint64_t nnz = g.edge_count();
  switch (algorithm) {
    case Algorithm::hits:
      return {n, 2 * nnz};
    case Algorithm::accelerated_hits:
      return {3 * n, 2 * nnz};
    case Algorithm::accelerated_hits_positive:
      // Two diagonal scalings, two sweeps, the teleport blend, and the
      // normalization: (N + N + N + N) mults, (nnz + nnz + N) adds.
      return {4 * n, 2 * nnz + n};
    case Algorithm::pagerank: {
      const std::uint64_t nd =
          n - static_cast<std::uint64_t>(dangling_nodes(g).size());
      if (nd == n) return {n, nnz + n};  // dangling-free
      return {n + nd, nnz + n + nd};
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

// Working-set formulas, as element counts. Documented model, asserted
// approximately by tests; actual solver workspaces may use one extra
// length-N scratch vector.
struct MemoryModel {
  std::uint64_t bools = 0;
  std::uint64_t ints = 0;
  std::uint64_t doubles = 0;
  friend bool operator==(const MemoryModel&, const MemoryModel&) = default;
};

inline MemoryModel estimate_memory(Algorithm algorithm, const WebGraph& g) {
  const std::uint64_t n = g.node_count();
  const std::uint64_t nnz = g.edge_count();
  switch (algorithm) {
    case Algorithm::hits:
      return {nnz, 0, 3 * n};
    case Algorithm::accelerated_hits:
    case Algorithm::accelerated_hits_positive:
      return {nnz, 0, 5 * n};
    case Algorithm::pagerank: {
      const std::uint64_t nd =
          n - static_cast<std::uint64_t>(dangling_nodes(g).size());
      if (nd == n) return {nnz, n, 2 * n};
      return {nnz + nd, n, 2 * n};
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

// Called after every completed iteration with the just-updated iterate
// (hub vector for the hits family, authority for the positive variant,
// score vector for pagerank). Test hook; not part of the cost model.
using IterationObserver =
    std::function<void(std::size_t iteration, std::span<const double>)>;

namespace detail {

class IterationTimer {
 public:
  IterationTimer() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline std::vector<double> starting_vector(std::size_t n, const SolverConfig& cfg) {
  if (!cfg.start) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  const std::vector<double>& given = *cfg.start;
  if (given.size() != n)
    throw std::invalid_argument("start vector length does not match graph");
  CompensatedSum sum;
  for (double x : given) {
    if (!(x >= 0.0)) throw std::invalid_argument("start vector must be nonnegative");
    sum.add(x);
  }
  const double s = sum.value();
  if (!(s > 0.0)) throw std::invalid_argument("start vector must have positive mass");
  std::vector<double> out(given);
  for (double& x : out) x /= s;
  return out;
}

// y = x * L   (y_j = sum of x over j's in-neighbors)
inline void in_sweep(const WebGraph& g, std::span<const double> x,
                     std::span<double> y) {
  for (NodeId j = 0; j < g.node_count(); ++j) {
    double acc = 0.0;
    for (NodeId i : g.in_neighbors(j)) acc += x[i];
    y[j] = acc;
  }
}

// y = x * L^T   (y_i = sum of x over i's out-neighbors)
inline void out_sweep(const WebGraph& g, std::span<const double> x,
                      std::span<double> y) {
  for (NodeId i = 0; i < g.node_count(); ++i) {
    double acc = 0.0;
    for (NodeId j : g.out_neighbors(i)) acc += x[j];
    y[i] = acc;
  }
}

inline double l1_diff(std::span<const double> a, std::span<const double> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(std::abs(a[i] - b[i]));
  return acc.value();
}

inline HitsResult run_hits_family(const WebGraph& g, const WeightDiagonals* w,
                                  const SolverConfig& cfg,
                                  const IterationObserver& observe) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (w && (w->ca.size() != n || w->ch.size() != n))
    throw std::invalid_argument("weight diagonals do not match graph");
  const CostModel cost =
      count_costs(w ? Algorithm::accelerated_hits : Algorithm::hits, g);

  std::vector<double> h = starting_vector(n, cfg);
  std::vector<double> a(n), hn(n), scratch(w ? n : 0);
  ConvergenceTrace trace;
  std::uint64_t mults = 0, adds = 0;
  IterationTimer timer;

  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    if (w) {
      for (std::size_t i = 0; i < n; ++i) scratch[i] = h[i] * w->ch[i];
      in_sweep(g, scratch, a);
      for (std::size_t i = 0; i < n; ++i) scratch[i] = a[i] * w->ca[i];
      out_sweep(g, scratch, hn);
    } else {
      in_sweep(g, h, a);
      out_sweep(g, a, hn);
    }
    const double mass = compensated_sum(hn);
    if (mass == 0.0)
      throw std::runtime_error("degenerate graph: zero hub mass");
    for (double& x : hn) x /= mass;
    const double delta = l1_diff(hn, h);
    h.swap(hn);
    mults += cost.mults;
    adds += cost.adds;
    trace.records.push_back({k, delta, mults, adds, timer.elapsed_ms()});
    if (observe) observe(k, h);
    if (delta <= cfg.epsilon) {
      trace.termination = Termination::converged;
      break;
    }
    trace.termination = Termination::max_iter;
  }
  trace.iterations = trace.records.size();

  // The loop's last authority iterate, normalized once outside the loop.
  const double amass = compensated_sum(a);
  for (double& x : a) x /= amass;
  return {RankVector{std::move(a), Norm::one}, RankVector{std::move(h), Norm::one},
          std::move(trace)};
}

}  // namespace detail

// Coupled authority/hub power iteration: a <- h L, h <- a L^T, h normalized
// each step, residual on h.
inline HitsResult run_hits(const WebGraph& g, const SolverConfig& cfg = {},
                           const IterationObserver& observe = {}) {
  return detail::run_hits_family(g, nullptr, cfg, observe);
}

// Same loop with the diagonal weights applied: a <- (h.ch) L, h <- (a.ca) L^T.
inline HitsResult run_accelerated_hits(const WebGraph& g,
                                       const WeightDiagonals& w,
                                       const SolverConfig& cfg = {},
                                       const IterationObserver& observe = {}) {
  return detail::run_hits_family(g, &w, cfg, observe);
}

// Authority-only iteration on the positive blend: a <- zeta * (a Ca L^T Ch L)
// + (1-zeta) * (sum a)/N, normalized each step, residual on a. The hub is
// revived afterwards as (a.ca) L^T. Strictly positive authorities by
// construction.
inline HitsResult run_accelerated_hits_positive(
    const WebGraph& g, const WeightDiagonals& w, const SolverConfig& cfg = {},
    const IterationObserver& observe = {}) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (w.ca.size() != n || w.ch.size() != n)
    throw std::invalid_argument("weight diagonals do not match graph");
  const CostModel cost = count_costs(Algorithm::accelerated_hits_positive, g);

  std::vector<double> a = detail::starting_vector(n, cfg);
  std::vector<double> scratch(n), t(n), s(n), an(n);
  ConvergenceTrace trace;
  std::uint64_t mults = 0, adds = 0;
  detail::IterationTimer timer;

  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    for (std::size_t i = 0; i < n; ++i) scratch[i] = a[i] * w.ca[i];
    detail::out_sweep(g, scratch, t);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = t[i] * w.ch[i];
    detail::in_sweep(g, scratch, s);
    const double u =
        (1.0 - cfg.zeta) * compensated_sum(a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) an[i] = cfg.zeta * s[i] + u;
    const double mass = compensated_sum(an);
    for (double& x : an) x /= mass;
    const double delta = detail::l1_diff(an, a);
    a.swap(an);
    mults += cost.mults;
    adds += cost.adds;
    trace.records.push_back({k, delta, mults, adds, timer.elapsed_ms()});
    if (observe) observe(k, a);
    if (delta <= cfg.epsilon) {
      trace.termination = Termination::converged;
      break;
    }
    trace.termination = Termination::max_iter;
  }
  trace.iterations = trace.records.size();

  for (std::size_t i = 0; i < n; ++i) scratch[i] = a[i] * w.ca[i];
  detail::out_sweep(g, scratch, t);
  const double hm = compensated_sum(t);
  RankVector hub;
  if (hm > 0.0) {
    for (double& x : t) x /= hm;
    hub = {std::move(t), Norm::one};
  } else {
    // No revivable hub mass (e.g. an edgeless graph); left as zeros.
    hub = {std::vector<double>(n, 0.0), Norm::none};
  }
  return {RankVector{std::move(a), Norm::one}, std::move(hub), std::move(trace)};
}

// Power iteration on the rank-one-folded surfer update
//   p <- alpha p Do^{-1} L + (alpha p d + 1 - alpha) e^T / N,
// with dangling rows contributing only through the d-vector term. The update
// preserves sum(p) = 1, so there is no per-iteration normalization.
inline PageRankResult run_pagerank(const WebGraph& g,
                                   const SolverConfig& cfg = {},
                                   const IterationObserver& observe = {}) {
  cfg.validate();
  const std::size_t n = g.node_count();
  const CostModel cost = count_costs(Algorithm::pagerank, g);
  const std::vector<NodeId> dangling = dangling_nodes(g);

  std::vector<double> inv(n, 0.0);
  for (NodeId i = 0; i < n; ++i)
    if (g.outdeg(i) > 0) inv[i] = cfg.alpha / static_cast<double>(g.outdeg(i));

  std::vector<double> p = detail::starting_vector(n, cfg);
  std::vector<double> scratch(n), pn(n);
  ConvergenceTrace trace;
  std::uint64_t mults = 0, adds = 0;
  detail::IterationTimer timer;

  for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
    for (std::size_t i = 0; i < n; ++i) scratch[i] = p[i] * inv[i];
    detail::in_sweep(g, scratch, pn);
    CompensatedSum dm;
    for (NodeId i : dangling) dm.add(p[i]);
    const double u =
        (cfg.alpha * dm.value() + 1.0 - cfg.alpha) / static_cast<double>(n);
    for (double& x : pn) x += u;
    const double delta = detail::l1_diff(pn, p);
    p.swap(pn);
    mults += cost.mults;
    adds += cost.adds;
    trace.records.push_back({k, delta, mults, adds, timer.elapsed_ms()});
    if (observe) observe(k, p);
    if (delta <= cfg.epsilon) {
      trace.termination = Termination::converged;
      break;
    }
    trace.termination = Termination::max_iter;
  }
  trace.iterations = trace.records.size();
  return {RankVector{std::move(p), Norm::one}, std::move(trace)};
}

}  // namespace linkrank

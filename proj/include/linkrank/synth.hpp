#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "linkrank/graph.hpp"

namespace linkrank {

struct SynthSpec {
  std::size_t n = 0;
  double target_avg_degree = 8.0;
  double in_exponent = 2.1;   // heavy-tail exponent for in-degrees
  double out_exponent = 2.7;  // heavy-tail exponent for out-degrees
  double dangling_fraction = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (n < 2) throw std::invalid_argument("synth: n must be at least 2");
    if (!(target_avg_degree > 0.0))
      throw std::invalid_argument("synth: target_avg_degree must be positive");
    if (!(in_exponent > 1.0) || !(out_exponent > 1.0))
      throw std::invalid_argument("synth: power-law exponents must exceed 1");
    if (!(dangling_fraction >= 0.0 && dangling_fraction < 1.0))
      throw std::invalid_argument("synth: dangling_fraction must lie in [0,1)");
  }
};

namespace detail {

// Uniform draw in the open interval (0,1); never 0, so inverse-power
// transforms stay finite.
inline double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

inline std::uint64_t pick_below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;  // modulo bias is immaterial at these bounds
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const std::size_t j =
        i + static_cast<std::size_t>(pick_below(rng, v.size() - i));
    std::swap(v[i], v[j]);
  }
}

// Inverse-CDF samples of a Pareto tail with the given exponent.
inline std::vector<double> pareto_draws(std::mt19937_64& rng, double exponent,
                                        std::size_t count) {
  std::vector<double> out(count);
  const double power = -1.0 / (exponent - 1.0);
  for (double& x : out) x = std::pow(unit_open(rng), power);
  return out;
}

// Scales raw positive samples by a common factor, rounds, and clamps each
// value to [lo, hi] so the clipped sum lands on `total`: geometric bisection
// brings it within reach, then single-unit random adjustments finish.
inline std::vector<std::uint64_t> scale_to_total(const std::vector<double>& raw,
                                                 std::uint64_t total,
                                                 std::uint64_t lo,
                                                 std::uint64_t hi,
                                                 std::mt19937_64& rng) {
  std::vector<std::uint64_t> out(raw.size(), lo);
  if (raw.empty() || total == 0) return out;
  const double dlo = static_cast<double>(lo), dhi = static_cast<double>(hi);
  auto fill = [&](double c) {
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      const double r = std::min(std::max(std::rint(c * raw[i]), dlo), dhi);
      out[i] = static_cast<std::uint64_t>(r);
      sum += out[i];
    }
    return sum;
  };
  double clo = 1e-9, chi = 1e9;
  for (int step = 0; step < 200; ++step) {
    const double c = std::sqrt(clo * chi);
    if (fill(c) < total) clo = c;
    else chi = c;
  }
  std::int64_t diff = static_cast<std::int64_t>(fill(chi)) -
                      static_cast<std::int64_t>(total);
  const std::size_t limit = 20 * out.size();
  for (std::size_t tries = 0; diff != 0 && tries < limit; ++tries) {
    const std::size_t i =
        static_cast<std::size_t>(pick_below(rng, out.size()));
    if (diff > 0 && out[i] > lo) {
      --out[i];
      --diff;
    } else if (diff < 0 && out[i] < hi) {
      ++out[i];
      ++diff;
    }
  }
  return out;
}

// Share of in-stubs assigned to linking pages in proportion to their own
// fan-out; the remainder follows the heavy-tailed in-degree law.
inline constexpr double kCoupledInShare = 0.3;

inline std::vector<Edge> synth_round(std::size_t n, std::uint64_t budget,
                                     std::size_t dangling_count,
                                     double in_exponent, double out_exponent,
                                     std::mt19937_64& rng) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  shuffle_vec(perm, rng);
  const std::size_t nond_count = n - dangling_count;

  std::vector<std::uint64_t> outdeg(n, 0), indeg(n, 0);
  {
    const auto od = scale_to_total(pareto_draws(rng, out_exponent, nond_count),
                                   budget, 1, n - 1, rng);
    for (std::size_t k = 0; k < nond_count; ++k)
      outdeg[perm[dangling_count + k]] = od[k];
  }
  const auto coupled = static_cast<std::uint64_t>(
      std::llround(kCoupledInShare * static_cast<double>(budget)));
  {
    std::vector<double> raw(nond_count);
    for (std::size_t k = 0; k < nond_count; ++k)
      raw[k] = static_cast<double>(outdeg[perm[dangling_count + k]]);
    const auto coupled_in = scale_to_total(raw, coupled, 0, n - 1, rng);
    for (std::size_t k = 0; k < nond_count; ++k)
      indeg[perm[dangling_count + k]] = coupled_in[k];
  }
  {
    std::vector<NodeId> rest;
    if (dangling_count > 0) {
      rest.assign(perm.begin(), perm.begin() + dangling_count);
    } else {
      rest.resize(n);
      std::iota(rest.begin(), rest.end(), NodeId{0});
    }
    const auto tail_in =
        scale_to_total(pareto_draws(rng, in_exponent, rest.size()),
                       budget - std::min(coupled, budget), 0, n - 1, rng);
    for (std::size_t k = 0; k < rest.size(); ++k) indeg[rest[k]] += tail_in[k];
  }

  std::vector<NodeId> src, dst;
  src.reserve(budget);
  dst.reserve(budget);
  for (NodeId i = 0; i < n; ++i)
    for (std::uint64_t c = 0; c < outdeg[i]; ++c) src.push_back(i);
  for (NodeId i = 0; i < n; ++i)
    for (std::uint64_t c = 0; c < indeg[i]; ++c) dst.push_back(i);
  shuffle_vec(dst, rng);

  const std::size_t pairs = std::min(src.size(), dst.size());
  std::vector<Edge> edges;
  edges.reserve(pairs);
  for (std::size_t q = 0; q < pairs; ++q)
    if (src[q] != dst[q]) edges.push_back({src[q], dst[q]});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace detail

// Seeded configuration-model generator: heavy-tailed in/out-degree targets,
// a forced share of pages with no outlinks, random stub wiring, self-loops
// and duplicates dropped. Up to two re-rolls adapt the stub budget to the
// dedup losses so the achieved average degree lands near the target.
inline WebGraph generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n;
  const auto dangling_count = static_cast<std::size_t>(
      std::llround(spec.dangling_fraction * static_cast<double>(n)));
  if (dangling_count >= n)
    throw std::invalid_argument(
        "synth: dangling_fraction leaves no page with outlinks");
  const auto want = static_cast<std::uint64_t>(
      std::llround(spec.target_avg_degree * static_cast<double>(n)));
  if (want == 0)
    throw std::invalid_argument("synth: target_avg_degree too small for n");
  const std::uint64_t cap =
      static_cast<std::uint64_t>(n - dangling_count) *
      static_cast<std::uint64_t>(n - 1);
  if (want > cap)
    throw std::invalid_argument(
        "synth: target_avg_degree infeasible at this node count and "
        "dangling_fraction");

  std::mt19937_64 rng(spec.seed);
  std::uint64_t budget = want;
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < 3; ++attempt) {
    edges = detail::synth_round(n, budget, dangling_count, spec.in_exponent,
                                spec.out_exponent, rng);
    const auto got = static_cast<double>(edges.size());
    if (std::abs(got - static_cast<double>(want)) <=
        0.1 * static_cast<double>(want))
      break;
    const double next = std::rint(static_cast<double>(budget) *
                                  static_cast<double>(want) /
                                  std::max(got, 1.0));
    budget = static_cast<std::uint64_t>(
        std::min(std::max(next, 1.0), static_cast<double>(cap)));
  }

  WebGraph g = from_edges(n, std::move(edges));
  const double achieved =
      static_cast<double>(g.edge_count()) / static_cast<double>(n);
  if (std::abs(achieved - spec.target_avg_degree) >
      0.25 * spec.target_avg_degree)
    throw std::runtime_error(
        "synth: achieved average degree missed the target by more than 25%");
  return g;
}

}  // namespace linkrank

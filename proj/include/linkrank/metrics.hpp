#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "linkrank/numeric.hpp"

namespace linkrank {

namespace detail {

inline void require_same_length(std::span<const double> u,
                                std::span<const double> v) {
  if (u.size() != v.size())
    throw std::invalid_argument("vector length mismatch");
}

}  // namespace detail

inline double cosine(std::span<const double> u, std::span<const double> v) {
  detail::require_same_length(u, v);
  CompensatedSum dot, uu, vv;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot.add(u[i] * v[i]);
    uu.add(u[i] * u[i]);
    vv.add(v[i] * v[i]);
  }
  const double nu = std::sqrt(uu.value());
  const double nv = std::sqrt(vv.value());
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("undefined cosine");
  return dot.value() / (nu * nv);
}

inline double l1_distance(std::span<const double> u, std::span<const double> v) {
  detail::require_same_length(u, v);
  CompensatedSum acc;
  for (std::size_t i = 0; i < u.size(); ++i) acc.add(std::abs(u[i] - v[i]));
  return acc.value();
}

// Descending fractional ranks: the largest value gets rank 1 and tied values
// share the average of the ranks they span.
inline std::vector<double> average_ranks(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a] != v[b]) return v[a] > v[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    // Ranks i+1 .. j+1 average to (i + j + 2) / 2.
    const double r = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

// Pearson correlation of descending average ranks.
inline double spearman(std::span<const double> u, std::span<const double> v) {
  detail::require_same_length(u, v);
  const std::size_t n = u.size();
  auto constant = [](std::span<const double> x) {
    for (double e : x)
      if (e != x.front()) return false;
    return true;
  };
  if (n < 2 || constant(u) || constant(v))
    throw std::domain_error("undefined correlation");

  const std::vector<double> ru = average_ranks(u);
  const std::vector<double> rv = average_ranks(v);
  // Ranks always total n(n+1)/2, ties included, so the mean is exact.
  const double mean = static_cast<double>(n + 1) / 2.0;
  CompensatedSum sxy, sxx, syy;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = ru[i] - mean;
    const double dy = rv[i] - mean;
    sxy.add(dx * dy);
    sxx.add(dx * dx);
    syy.add(dy * dy);
  }
  return sxy.value() / (std::sqrt(sxx.value()) * std::sqrt(syy.value()));
}

// Indices of the k largest entries, score descending, ties by ascending id.
inline std::vector<std::size_t> top_k_indices(std::span<const double> v,
                                              std::size_t k) {
  if (k == 0 || k > v.size())
    throw std::invalid_argument("top-k count out of range");
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (v[a] != v[b]) return v[a] > v[b];
                      return a < b;
                    });
  order.resize(k);
  return order;
}

inline double topk_overlap(std::span<const double> u, std::span<const double> v,
                           std::size_t k) {
  detail::require_same_length(u, v);
  std::vector<std::size_t> tu = top_k_indices(u, k);
  std::vector<std::size_t> tv = top_k_indices(v, k);
  std::sort(tu.begin(), tu.end());
  std::sort(tv.begin(), tv.end());
  std::vector<std::size_t> both;
  std::set_intersection(tu.begin(), tu.end(), tv.begin(), tv.end(),
                        std::back_inserter(both));
  return static_cast<double>(both.size()) / static_cast<double>(k);
}

struct SimilarityReport {
  double cosine = 0.0;
  std::optional<double> spearman;  // absent when either ordering is constant
  double l1_distance = 0.0;
  std::map<std::size_t, double> topk_overlap;
};

inline SimilarityReport compare_vectors(std::span<const double> u,
                                        std::span<const double> v,
                                        std::span<const std::size_t> ks = {}) {
  SimilarityReport r;
  r.cosine = cosine(u, v);
  try {
    r.spearman = spearman(u, v);
  } catch (const std::domain_error&) {
    r.spearman = std::nullopt;
  }
  r.l1_distance = l1_distance(u, v);
  for (std::size_t k : ks) r.topk_overlap[k] = topk_overlap(u, v, k);
  return r;
}

}  // namespace linkrank

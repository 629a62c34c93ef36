// End-to-end acceptance checks. Each test prints one summary line so the
// whole gate can be read off the log:   [ACCEPTANCE] NN <name> PASS|FAIL
#include <gtest/gtest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "linkrank/graph.hpp"
#include "linkrank/metrics.hpp"
#include "linkrank/numeric.hpp"
#include "linkrank/solver.hpp"
#include "linkrank/synth.hpp"
#include "linkrank/weights.hpp"
#include "test_support.hpp"

namespace {

using linkrank::Algorithm;
using linkrank::SolverConfig;
using linkrank::Termination;
using linkrank::WebGraph;

struct Banner {
  const char* id;
  const char* name;
  ~Banner() {
    std::printf("[ACCEPTANCE] %s %s %s\n", id, name,
                ::testing::Test::HasFailure() ? "FAIL" : "PASS");
    std::fflush(stdout);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// --- 01: the sparse HITS loop agrees with a dense replay of the same
//         iteration (start vector, sweep order, and normalization included).
TEST(Acceptance, HitsAgreesWithDenseReplay) {
  Banner banner{"01", "hits-dense-replay"};
  std::mt19937_64 rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  int converged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const WebGraph g = testsupport::random_small_graph(rng);
    linkrank::HitsResult r;
    try {
      r = linkrank::run_hits(g);
    } catch (const std::runtime_error&) {
      continue;  // zero hub mass cannot happen with >=1 edge, but be safe
    }
    if (r.trace.termination != Termination::converged) continue;
    ++converged;
    const std::vector<double> oracle =
        testsupport::replay_hits_authority(g, r.trace.iterations);
    EXPECT_LE(testsupport::l1_diff(r.authority.values, oracle), 1e-8)
        << "trial " << trial;
  }
  EXPECT_GE(converged, 150);
  EXPECT_LT(seconds_since(t0), 10.0);
}

// --- 02: the weighted loop agrees with a dense replay against the collapsed
//         authority matrix X = Ca L^T Ch L.
TEST(Acceptance, WeightedHitsAgreesWithCollapsedMatrixReplay) {
  Banner banner{"02", "ahits-collapsed-matrix-replay"};
  std::mt19937_64 rng(202);
  const auto t0 = std::chrono::steady_clock::now();
  int converged = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const WebGraph g = testsupport::random_small_graph(rng);
    const linkrank::WeightDiagonals w = linkrank::compute_weights(g);
    linkrank::HitsResult r;
    try {
      r = linkrank::run_accelerated_hits(g, w);
    } catch (const std::runtime_error&) {
      continue;  // weighted hub mass can die on contrived degree patterns
    }
    if (r.trace.termination != Termination::converged) continue;
    ++converged;
    const std::vector<double> oracle =
        testsupport::replay_weighted_authority(g, w, r.trace.iterations);
    EXPECT_LE(testsupport::l1_diff(r.authority.values, oracle), 1e-8)
        << "trial " << trial;
  }
  EXPECT_GE(converged, 150);
  EXPECT_LT(seconds_since(t0), 10.0);
}

// --- 03: computed diagonal weights equal an independent symbolic evaluation
//         on every degree pair in [0,50]^2, bitwise. Each weight is a single
//         IEEE division of exactly representable integers, so the correctly
//         rounded quotient is determined by the rational value alone.
TEST(Acceptance, WeightsMatchSymbolicRationals) {
  Banner banner{"03", "weights-exact-rationals"};
  for (std::uint64_t in = 0; in <= 50; ++in)
    for (std::uint64_t out = 0; out <= 50; ++out) {
      const linkrank::NodeWeights got = linkrank::node_weights(in, out);
      const testsupport::RationalWeights ref =
          testsupport::weight_reference(in, out);
      const double ca = static_cast<double>(ref.ca_num) /
                        static_cast<double>(ref.ca_den);
      const double ch = static_cast<double>(ref.ch_num) /
                        static_cast<double>(ref.ch_den);
      EXPECT_EQ(got.ca, ca) << "in=" << in << " out=" << out;
      EXPECT_EQ(got.ch, ch) << "in=" << in << " out=" << out;
    }
}

// --- 04: the live mult/add counters advance by exactly the documented
//         per-iteration cost on every iteration of every solver.
TEST(Acceptance, OperationCountersMatchCostFormulas) {
  Banner banner{"04", "op-counters-match-formulas"};

  // Documented example: 3 nodes, 2 edges -> 3 mults and 4 adds per sweep.
  const WebGraph tiny = testsupport::g1();
  const linkrank::CostModel tiny_cost =
      linkrank::count_costs(Algorithm::hits, tiny);
  EXPECT_EQ(tiny_cost.mults, 3u);
  EXPECT_EQ(tiny_cost.adds, 4u);

  std::mt19937_64 rng(404);
  std::vector<WebGraph> graphs;
  graphs.push_back(tiny);
  graphs.push_back(linkrank::back_button_transform(tiny));
  graphs.push_back(testsupport::two_cycle());
  graphs.push_back(testsupport::random_graph(rng, 30, 0.1));
  graphs.push_back(testsupport::random_dangling_free_graph(rng, 20));

  SolverConfig cfg;
  cfg.epsilon = 1e-6;
  cfg.max_iter = 60;
  for (const WebGraph& g : graphs) {
    const linkrank::WeightDiagonals w = linkrank::compute_weights(g);
    for (Algorithm algo :
         {Algorithm::hits, Algorithm::accelerated_hits,
          Algorithm::accelerated_hits_positive, Algorithm::pagerank}) {
      linkrank::ConvergenceTrace trace;
      try {
        switch (algo) {
          case Algorithm::hits: trace = linkrank::run_hits(g, cfg).trace; break;
          case Algorithm::accelerated_hits:
            trace = linkrank::run_accelerated_hits(g, w, cfg).trace;
            break;
          case Algorithm::accelerated_hits_positive:
            trace = linkrank::run_accelerated_hits_positive(g, w, cfg).trace;
            break;
          case Algorithm::pagerank:
            trace = linkrank::run_pagerank(g, cfg).trace;
            break;
        }
      } catch (const std::runtime_error&) {
        continue;  // degenerate hub mass; counters have nothing to accrue
      }
      const linkrank::CostModel cost = linkrank::count_costs(algo, g);
      ASSERT_FALSE(trace.records.empty());
      for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const std::uint64_t k = i + 1;
        EXPECT_EQ(trace.records[i].mults, k * cost.mults)
            << linkrank::algorithm_name(algo) << " iteration " << k;
        EXPECT_EQ(trace.records[i].adds, k * cost.adds)
            << linkrank::algorithm_name(algo) << " iteration " << k;
      }
    }
  }
}

// --- 05: the back-button transform adds exactly one reciprocal edge per
//         (dangling page, in-neighbor) pair and fixes dangling-free graphs.
TEST(Acceptance, BackButtonEdgeCountIsExact) {
  Banner banner{"05", "back-button-edge-count"};
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng() % 50;
    const double p = 0.05 + 0.2 * testsupport::unit(rng);
    const WebGraph g = testsupport::random_graph(rng, n, p);
    std::uint64_t extra = 0;
    for (linkrank::NodeId d : linkrank::dangling_nodes(g)) extra += g.indeg(d);
    const WebGraph star = linkrank::back_button_transform(g);
    EXPECT_EQ(star.edge_count(), g.edge_count() + extra) << "trial " << trial;
    // only fully isolated pages may still dangle afterwards
    for (linkrank::NodeId d : linkrank::dangling_nodes(star))
      EXPECT_EQ(g.indeg(d) + g.outdeg(d), 0u) << "trial " << trial;
  }
  for (int trial = 0; trial < 20; ++trial) {
    const WebGraph g =
        testsupport::random_dangling_free_graph(rng, 4 + rng() % 30);
    EXPECT_TRUE(linkrank::back_button_transform(g) == g) << "trial " << trial;
  }
}

// Solves p = p M row-stochastically for a 3-node chain by Gaussian
// elimination on (M^T - I), replacing the last equation with sum(p) = 1.
std::array<double, 3> stationary3(const std::array<std::array<double, 3>, 3>& m) {
  std::array<std::array<double, 4>, 3> a{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[j][i] - (i == j ? 1.0 : 0.0);
    a[i][3] = 0.0;
  }
  a[2] = {1.0, 1.0, 1.0, 1.0};
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

// --- 06: the random-surfer scores stay on the probability simplex at every
//         iteration, and the tiny back-button chain matches a direct linear
//         solve of its stationary equations.
TEST(Acceptance, PagerankConservesMassAndMatchesLinearSolve) {
  Banner banner{"06", "pagerank-mass-and-linear-solve"};
  std::mt19937_64 rng(606);

  std::vector<WebGraph> graphs;
  graphs.push_back(testsupport::g1());
  graphs.push_back(linkrank::back_button_transform(testsupport::g1()));
  graphs.push_back(testsupport::two_cycle());
  graphs.push_back(testsupport::star_out());
  graphs.push_back(testsupport::edgeless(5));
  for (int trial = 0; trial < 10; ++trial)
    graphs.push_back(testsupport::random_graph(rng, 5 + rng() % 35,
                                               0.05 + 0.2 * testsupport::unit(rng)));
  graphs.push_back(linkrank::generate({.n = 500,
                                       .target_avg_degree = 6.0,
                                       .dangling_fraction = 0.5,
                                       .seed = 77}));

  for (const WebGraph& g : graphs) {
    double worst = 0.0;
    const auto observer = [&](std::size_t, std::span<const double> p) {
      linkrank::CompensatedSum mass;
      for (double x : p) mass.add(x);
      worst = std::max(worst, std::fabs(mass.value() - 1.0));
    };
    linkrank::run_pagerank(g, {}, observer);
    EXPECT_LE(worst, 1e-12) << "n=" << g.node_count();
  }

  const double alpha = 0.85;
  const WebGraph chain = linkrank::back_button_transform(testsupport::g1());
  std::array<std::array<double, 3>, 3> m{};
  for (linkrank::NodeId i = 0; i < 3; ++i) {
    for (linkrank::NodeId j : chain.out_neighbors(i))
      m[i][j] += alpha / static_cast<double>(chain.outdeg(i));
    for (int j = 0; j < 3; ++j) m[i][j] += (1.0 - alpha) / 3.0;
  }
  const std::array<double, 3> direct = stationary3(m);

  SolverConfig cfg;
  cfg.alpha = alpha;
  cfg.epsilon = 1e-13;
  const linkrank::PageRankResult r = linkrank::run_pagerank(chain, cfg);
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(r.scores.values[i], direct[i], 1e-10) << "node " << i;
}

// Shared 20-seed sweep for the convergence and agreement criteria: large
// mostly-dangling graphs, back-button closed, solved to eps = 1e-10.
struct SweepResult {
  std::vector<double> k_plain, k_weighted, k_surfer;
  std::vector<double> authority_cosine, hub_spearman;
  int weighted_wins = 0;
  double elapsed_s = 0.0;
};

const SweepResult& sweep() {
  static const SweepResult result = [] {
    SweepResult r;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      linkrank::SynthSpec spec;
      spec.n = 10000;
      spec.target_avg_degree = 8.0;
      spec.dangling_fraction = 0.8;
      spec.seed = seed;
      const WebGraph g =
          linkrank::back_button_transform(linkrank::generate(spec));
      const linkrank::WeightDiagonals w = linkrank::compute_weights(g);

      const linkrank::HitsResult plain = linkrank::run_hits(g);
      const linkrank::HitsResult weighted = linkrank::run_accelerated_hits(g, w);
      const linkrank::PageRankResult surfer = linkrank::run_pagerank(g);

      r.k_plain.push_back(static_cast<double>(plain.trace.iterations));
      r.k_weighted.push_back(static_cast<double>(weighted.trace.iterations));
      r.k_surfer.push_back(static_cast<double>(surfer.trace.iterations));
      if (weighted.trace.iterations <= plain.trace.iterations)
        ++r.weighted_wins;

      r.authority_cosine.push_back(
          linkrank::cosine(plain.authority.values, weighted.authority.values));
      try {
        r.hub_spearman.push_back(
            linkrank::spearman(plain.hub.values, weighted.hub.values));
      } catch (const std::domain_error&) {
        r.hub_spearman.push_back(0.0);
      }
    }
    r.elapsed_s = seconds_since(t0);
    return r;
  }();
  return result;
}

// --- 07: on large mostly-dangling graphs the weighted iteration needs no
//         more sweeps than plain HITS almost always, and its median iteration
//         count beats both plain HITS and the random surfer.
TEST(Acceptance, WeightedIterationConvergesFaster) {
  Banner banner{"07", "accelerated-convergence-wins"};
  const SweepResult& r = sweep();
  ASSERT_EQ(r.k_plain.size(), 20u);
  EXPECT_GE(r.weighted_wins, 15);
  const double med_w = testsupport::median(r.k_weighted);
  EXPECT_LT(med_w, testsupport::median(r.k_plain));
  EXPECT_LT(med_w, testsupport::median(r.k_surfer));
  EXPECT_LT(r.elapsed_s, 300.0);
  std::printf("[sweep] median K plain=%g weighted=%g surfer=%g wins=%d/20 "
              "elapsed=%.1fs\n",
              testsupport::median(r.k_plain), med_w,
              testsupport::median(r.k_surfer), r.weighted_wins, r.elapsed_s);
}

// --- 08: the weighted solution still ranks like HITS on those graphs:
//         median authority cosine and median hub rank-correlation >= 0.8.
TEST(Acceptance, WeightedSolutionAgreesWithPlainRanking) {
  Banner banner{"08", "ranking-agreement"};
  const SweepResult& r = sweep();
  ASSERT_EQ(r.authority_cosine.size(), 20u);
  const double med_cos = testsupport::median(r.authority_cosine);
  const double med_rho = testsupport::median(r.hub_spearman);
  EXPECT_GE(med_cos, 0.8);
  EXPECT_GE(med_rho, 0.8);
  std::printf("[sweep] median authority cosine=%.4f hub spearman=%.4f\n",
              med_cos, med_rho);
}

// --- 09: the positive blend produces strictly positive authorities on every
//         graph (reducible ones included) and converges to a start-independent
//         fixed point on small graphs.
TEST(Acceptance, PositiveBlendIsPositiveAndStartIndependent) {
  Banner banner{"09", "positive-variant-uniqueness"};
  std::mt19937_64 rng(909);
  SolverConfig cfg;
  cfg.epsilon = 1e-12;
  cfg.max_iter = 50000;
  for (int trial = 0; trial < 100; ++trial) {
    const WebGraph g = (trial % 2 == 0)
                           ? testsupport::random_reducible_graph(
                                 rng, 4 + rng() % 9)
                           : testsupport::random_small_graph(rng);
    const linkrank::WeightDiagonals w = linkrank::compute_weights(g);
    const linkrank::HitsResult base =
        linkrank::run_accelerated_hits_positive(g, w, cfg);
    for (double x : base.authority.values) EXPECT_GT(x, 0.0);

    if (g.node_count() > 8) continue;
    for (int variant = 0; variant < 3; ++variant) {
      SolverConfig alt = cfg;
      alt.start = std::vector<double>(g.node_count());
      for (double& x : *alt.start) x = 0.05 + testsupport::unit(rng);
      const linkrank::HitsResult other =
          linkrank::run_accelerated_hits_positive(g, w, alt);
      EXPECT_LE(testsupport::l1_diff(base.authority.values,
                                     other.authority.values),
                1e-8)
          << "trial " << trial;
    }
  }
}

// --- 10: metric identities: rank correlation hits +1 on identical orderings
//         and -1 on reversals, and cosine ignores positive rescaling.
TEST(Acceptance, MetricIdentitiesHold) {
  Banner banner{"10", "metric-identities"};
  std::mt19937_64 rng(1010);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<double> v(n), asc(n), desc(n);
    bool constant = true;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = static_cast<double>(rng() % 10);
      if (v[i] != v[0]) constant = false;
      asc[i] = static_cast<double>(i) + testsupport::unit(rng) * 0.5;
      desc[i] = static_cast<double>(n - i) + testsupport::unit(rng) * 0.5;
    }
    if (!constant)
      EXPECT_NEAR(linkrank::spearman(v, v), 1.0, 1e-12);
    EXPECT_NEAR(linkrank::spearman(asc, desc), -1.0, 1e-12);
  }

  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng() % 20;
    std::vector<double> u(n), v(n), scaled(n);
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = testsupport::unit(rng) * 10.0 - 5.0;
      v[i] = testsupport::unit(rng) * 10.0 - 5.0;
    }
    u[rng() % n] += 1.0;  // keep both vectors away from zero
    v[rng() % n] += 1.0;
    const double c = std::exp(testsupport::unit(rng) * 24.0 - 12.0);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = c * v[i];
    EXPECT_NEAR(linkrank::cosine(u, scaled), linkrank::cosine(u, v), 1e-12)
        << "trial " << trial << " c=" << c;
  }
}

}  // namespace

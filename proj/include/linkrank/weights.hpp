#pragma once

#include <cstdint>
#include <vector>

#include "linkrank/graph.hpp"

namespace linkrank {

struct NodeWeights {
  double ca = 0.0;
  double ch = 0.0;
};

// Per-node acceleration constants:
//   p  = sign(indeg - outdeg) in {+1, 0, -1}
//   ca = (indeg / deg)  * |indeg - outdeg|^p
//   ch = (outdeg / deg) * |indeg - outdeg|^(-p)
// with 0^0 = 1 on the balanced branch (so ca = ch = 1/2 there) and
// ca = ch = 0 for isolated nodes (deg = 0), which keeps them inert.
//
// Each value is produced by a single division of exactly representable
// integer products, so results are correctly rounded (and exact whenever
// the quotient is representable).
inline NodeWeights node_weights(std::uint64_t indeg, std::uint64_t outdeg) {
  const std::uint64_t deg = indeg + outdeg;
  if (deg == 0) return {0.0, 0.0};
  if (indeg > outdeg) {
    const std::uint64_t diff = indeg - outdeg;
    return {static_cast<double>(indeg * diff) / static_cast<double>(deg),
            static_cast<double>(outdeg) / static_cast<double>(deg * diff)};
  }
  if (indeg < outdeg) {
    const std::uint64_t diff = outdeg - indeg;
    return {static_cast<double>(indeg) / static_cast<double>(deg * diff),
            static_cast<double>(outdeg * diff) / static_cast<double>(deg)};
  }
  return {static_cast<double>(indeg) / static_cast<double>(deg),
          static_cast<double>(outdeg) / static_cast<double>(deg)};
}

// Diagonals of the weight matrices Ca and Ch.
struct WeightDiagonals {
  std::vector<double> ca;
  std::vector<double> ch;
};

inline WeightDiagonals compute_weights(const WebGraph& g) {
  const std::size_t n = g.node_count();
  WeightDiagonals w;
  w.ca.resize(n);
  w.ch.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    const NodeWeights nw = node_weights(g.indeg(i), g.outdeg(i));
    w.ca[i] = nw.ca;
    w.ch[i] = nw.ch;
  }
  return w;
}

}  // namespace linkrank

#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace linkrank {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable sparse directed graph in canonical form: nodes are dense 0-based
// ids, adjacency is stored CSR-style in both directions, neighbor lists are
// sorted ascending, and there are no self-loops or duplicate edges.
class WebGraph {
 public:
  WebGraph() : out_offsets_(1, 0), in_offsets_(1, 0) {}

  std::size_t node_count() const { return out_offsets_.size() - 1; }
  std::uint64_t edge_count() const { return out_targets_.size(); }

  // F_i: nodes that i links to (row i).
  std::span<const NodeId> out_neighbors(NodeId i) const {
    return {out_targets_.data() + out_offsets_[i],
            out_targets_.data() + out_offsets_[i + 1]};
  }
  // B_i: nodes that link to i (column i).
  std::span<const NodeId> in_neighbors(NodeId i) const {
    return {in_targets_.data() + in_offsets_[i],
            in_targets_.data() + in_offsets_[i + 1]};
  }

  std::uint64_t outdeg(NodeId i) const {
    return out_offsets_[i + 1] - out_offsets_[i];
  }
  std::uint64_t indeg(NodeId i) const {
    return in_offsets_[i + 1] - in_offsets_[i];
  }
  std::uint64_t deg(NodeId i) const { return indeg(i) + outdeg(i); }

  // Edges whose source equals their target, dropped during construction.
  std::size_t dropped_self_loops() const { return dropped_self_loops_; }

  // Optional display names ("" where unset); never touched by the numeric core.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != node_count())
      throw std::runtime_error("label count does not match node count");
    labels_ = std::move(labels);
  }

  const std::vector<std::uint64_t>& out_offsets() const { return out_offsets_; }
  const std::vector<NodeId>& out_targets() const { return out_targets_; }
  const std::vector<std::uint64_t>& in_offsets() const { return in_offsets_; }
  const std::vector<NodeId>& in_targets() const { return in_targets_; }

  // Structural equality; labels and drop counters are bookkeeping, not shape.
  friend bool operator==(const WebGraph& a, const WebGraph& b) {
    return a.out_offsets_ == b.out_offsets_ && a.out_targets_ == b.out_targets_;
  }

  friend WebGraph from_edges(std::size_t n, std::vector<Edge> edges);

 private:
  std::vector<std::uint64_t> out_offsets_;
  std::vector<NodeId> out_targets_;
  std::vector<std::uint64_t> in_offsets_;
  std::vector<NodeId> in_targets_;
  std::vector<std::string> labels_;
  std::size_t dropped_self_loops_ = 0;
};

// Canonicalizes and builds: drops self-loops (counted), collapses duplicates,
// and derives the reverse adjacency from the forward one.
inline WebGraph from_edges(std::size_t n, std::vector<Edge> edges) {
  if (n == 0) throw std::runtime_error("a graph must have at least 1 node");

  std::size_t dropped = 0;
  std::erase_if(edges, [&](const Edge& e) {
    if (e.src == e.dst) {
      ++dropped;
      return true;
    }
    return false;
  });
  for (const Edge& e : edges)
    if (e.src >= n || e.dst >= n)
      throw std::runtime_error("edge endpoint out of range");
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  WebGraph g;
  g.dropped_self_loops_ = dropped;
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (const Edge& e : edges) {
    ++g.out_offsets_[e.src + 1];
    ++g.in_offsets_[e.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_targets_.resize(edges.size());
  g.in_targets_.resize(edges.size());
  std::vector<std::uint64_t> pos(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    g.out_targets_[k] = edges[k].dst;
    // Edges are sorted by (src, dst), so each in-list fills ascending by src.
    g.in_targets_[pos[edges[k].dst]++] = edges[k].src;
  }
  return g;
}

// Ids with no outlinks, ascending.
inline std::vector<NodeId> dangling_nodes(const WebGraph& g) {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (g.outdeg(i) == 0) out.push_back(i);
  return out;
}

// Adds, for every dangling node i, the edges i -> j for each in-neighbor j
// (each dangling row becomes a copy of its column). Non-dangling rows are
// unchanged; a dangling node with no in-neighbors stays dangling.
inline WebGraph back_button_transform(const WebGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * 2);
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j : g.out_neighbors(i)) edges.push_back({i, j});
  for (NodeId i : dangling_nodes(g))
    for (NodeId j : g.in_neighbors(i)) edges.push_back({i, j});
  WebGraph out = from_edges(g.node_count(), std::move(edges));
  out.set_labels(g.labels());
  return out;
}

// Every edge reversed; swaps the roles of in- and out-degrees.
inline WebGraph transposed(const WebGraph& g) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j : g.out_neighbors(i)) edges.push_back({j, i});
  WebGraph out = from_edges(g.node_count(), std::move(edges));
  out.set_labels(g.labels());
  return out;
}

struct GraphStats {
  static constexpr std::array<double, 4> thresholds{0.6, 0.7, 0.8, 0.9};

  std::size_t n = 0;
  std::uint64_t nnz = 0;
  std::size_t dangling_count = 0;
  double dangling_percent = 0.0;
  double average_degree = 0.0;  // links per page: nnz / n
  // Fraction of nodes with indeg/deg > t resp. outdeg/deg > t, per threshold.
  // Nodes with deg = 0 are excluded from the denominators.
  std::array<double, 4> fi_fraction{};
  std::array<double, 4> fo_fraction{};
};

inline GraphStats compute_stats(const WebGraph& g) {
  GraphStats s;
  s.n = g.node_count();
  s.nnz = g.edge_count();
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (g.outdeg(i) == 0) ++s.dangling_count;
  s.dangling_percent = 100.0 * static_cast<double>(s.dangling_count) /
                       static_cast<double>(s.n);
  s.average_degree = static_cast<double>(s.nnz) / static_cast<double>(s.n);

  std::size_t connected = 0;
  std::array<std::size_t, 4> fi_count{};
  std::array<std::size_t, 4> fo_count{};
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto d = g.deg(i);
    if (d == 0) continue;
    ++connected;
    const double fi = static_cast<double>(g.indeg(i)) / static_cast<double>(d);
    const double fo = static_cast<double>(g.outdeg(i)) / static_cast<double>(d);
    for (std::size_t t = 0; t < GraphStats::thresholds.size(); ++t) {
      if (fi > GraphStats::thresholds[t]) ++fi_count[t];
      if (fo > GraphStats::thresholds[t]) ++fo_count[t];
    }
  }
  for (std::size_t t = 0; t < GraphStats::thresholds.size(); ++t) {
    s.fi_fraction[t] = connected ? static_cast<double>(fi_count[t]) / connected : 0.0;
    s.fo_fraction[t] = connected ? static_cast<double>(fo_count[t]) / connected : 0.0;
  }
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<std::uint64_t> parse_u64(std::string_view tok) {
  std::uint64_t v = 0;
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || p != end) return std::nullopt;
  return v;
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("parse error at line " + std::to_string(line) + ": " + what);
}

}  // namespace detail

// Text edge lists: one "src<TAB>dst" pair per line (a run of spaces also
// separates), '#' lines are comments, and an optional "# nodes: N" header
// fixes the node count (otherwise it is 1 + the largest id seen).
inline WebGraph load_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<std::uint64_t> declared_n;
  NodeId max_id = 0;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      sv.remove_prefix(1);
      sv = detail::trim(sv);
      if (sv.starts_with("nodes:")) {
        sv.remove_prefix(6);
        auto n = detail::parse_u64(detail::trim(sv));
        if (!n || *n == 0)
          detail::parse_fail(lineno, "invalid node-count header");
        if (declared_n && *declared_n != *n)
          detail::parse_fail(lineno, "conflicting node-count headers");
        declared_n = *n;
      }
      continue;
    }
    const std::size_t sep = sv.find_first_of(" \t");
    if (sep == std::string_view::npos)
      detail::parse_fail(lineno, "expected two node ids");
    auto src = detail::parse_u64(detail::trim(sv.substr(0, sep)));
    auto dst = detail::parse_u64(detail::trim(sv.substr(sep)));
    if (!src || !dst)
      detail::parse_fail(lineno, "expected two node ids");
    if (*src > 0xffffffffULL || *dst > 0xffffffffULL)
      detail::parse_fail(lineno, "node id too large");
    edges.push_back({static_cast<NodeId>(*src), static_cast<NodeId>(*dst)});
    max_id = std::max({max_id, edges.back().src, edges.back().dst});
  }

  if (edges.empty() && !declared_n)
    throw std::runtime_error("empty input: a graph must have at least 1 node");
  const std::uint64_t n =
      declared_n ? *declared_n : static_cast<std::uint64_t>(max_id) + 1;
  if (!edges.empty() && max_id >= n)
    throw std::runtime_error("node id " + std::to_string(max_id) +
                             " out of range for declared node count " +
                             std::to_string(n));
  return from_edges(static_cast<std::size_t>(n), std::move(edges));
}

inline void serialize_edge_list(const WebGraph& g, std::ostream& out) {
  out << "# nodes: " << g.node_count() << '\n';
  for (NodeId i = 0; i < g.node_count(); ++i)
    for (NodeId j : g.out_neighbors(i)) out << i << '\t' << j << '\n';
}

namespace detail {

inline constexpr char kGraphMagic[8] = {'L', 'R', 'G', 'R', 'A', 'P', 'H', '1'};

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  char b[8];
  if (!in.read(b, 8)) throw std::runtime_error("binary graph cache truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i)
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
  return v;
}

}  // namespace detail

// Binary cache: magic, n, nnz, then the forward CSR offset and target arrays,
// all little-endian 64-bit. The reverse adjacency is rebuilt on load.
inline void save_binary(const WebGraph& g, std::ostream& out) {
  out.write(detail::kGraphMagic, sizeof detail::kGraphMagic);
  detail::put_u64(out, g.node_count());
  detail::put_u64(out, g.edge_count());
  for (std::uint64_t v : g.out_offsets()) detail::put_u64(out, v);
  for (NodeId t : g.out_targets()) detail::put_u64(out, t);
  if (!out) throw std::runtime_error("binary graph cache write failed");
}

inline WebGraph load_binary(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || !std::equal(magic, magic + 8, detail::kGraphMagic))
    throw std::runtime_error("not a binary graph cache");
  const std::uint64_t n = detail::get_u64(in);
  const std::uint64_t nnz = detail::get_u64(in);
  if (n == 0) throw std::runtime_error("binary graph cache has zero nodes");
  std::uint64_t prev = detail::get_u64(in);
  if (prev != 0) throw std::runtime_error("binary graph cache corrupt offsets");
  std::vector<Edge> edges;
  edges.reserve(nnz);
  std::vector<std::uint64_t> offsets(n + 1);
  offsets[0] = prev;
  for (std::uint64_t i = 1; i <= n; ++i) {
    offsets[i] = detail::get_u64(in);
    if (offsets[i] < offsets[i - 1])
      throw std::runtime_error("binary graph cache corrupt offsets");
  }
  if (offsets[n] != nnz)
    throw std::runtime_error("binary graph cache corrupt offsets");
  NodeId src = 0;
  for (std::uint64_t k = 0; k < nnz; ++k) {
    while (k >= offsets[src + 1]) ++src;
    const std::uint64_t dst = detail::get_u64(in);
    if (dst >= n) throw std::runtime_error("binary graph cache target out of range");
    edges.push_back({src, static_cast<NodeId>(dst)});
  }
  return from_edges(static_cast<std::size_t>(n), std::move(edges));
}

// Label sidecar: TSV lines "id<TAB>label".
inline std::vector<std::string> load_labels(std::istream& in, std::size_t n) {
  std::vector<std::string> labels(n);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const std::size_t sep = sv.find('\t');
    if (sep == std::string_view::npos)
      detail::parse_fail(lineno, "expected id<TAB>label");
    auto id = detail::parse_u64(detail::trim(sv.substr(0, sep)));
    if (!id || *id >= n) detail::parse_fail(lineno, "label id out of range");
    labels[*id] = std::string(detail::trim(sv.substr(sep + 1)));
  }
  return labels;
}

inline void save_labels(const std::vector<std::string>& labels, std::ostream& out) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!labels[i].empty()) out << i << '\t' << labels[i] << '\n';
}

// Loads a graph from disk: *.bin as the binary cache format, anything else
// as a text edge list.
inline WebGraph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  if (path.extension() == ".bin") return load_binary(in);
  return load_edge_list(in);
}

}  // namespace linkrank

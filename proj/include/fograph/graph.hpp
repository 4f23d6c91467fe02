#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fograph/errors.hpp"
#include "fograph/rng.hpp"

namespace fograph {

// Simple undirected graph on vertices 0..n-1 with bitset adjacency rows.
// Immutable by convention once built; all operations below are pure.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {
    if (n < 0) throw ValidationError("vertex count must be nonnegative");
  }

  int order() const { return n_; }
  int words_per_row() const { return words_; }

  bool has_edge(int u, int v) const {
    return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1ULL;
  }

  void add_edge(int u, int v) {
    check_pair(u, v);
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ULL << (v & 63);
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ULL << (u & 63);
  }

  void remove_edge(int u, int v) {
    check_pair(u, v);
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(1ULL << (v & 63));
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(1ULL << (u & 63));
  }

  std::span<const std::uint64_t> row(int v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, static_cast<std::size_t>(words_)};
  }

  int degree(int v) const {
    int d = 0;
    for (auto w : row(v)) d += std::popcount(w);
    return d;
  }

  long edge_count() const {
    long total = 0;
    for (int v = 0; v < n_; ++v) total += degree(v);
    return total / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  bool operator==(const Graph&) const = default;

  static Graph from_edges(int n, std::initializer_list<std::pair<int, int>> edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

  static Graph cycle(int n) {
    Graph g(n);
    for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
    return g;
  }

  static Graph path(int n) {
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
  }

 private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ValidationError("vertex index out of range");
    if (u == v) throw ValidationError("self-loops are not allowed");
  }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Uniform sample over all 2^(n choose 2) labeled graphs; per-edge bits are
// drawn in row-major (u < v) order so the sample is a pure function of seed.
inline Graph sample_uniform(int n, std::uint64_t seed) {
  if (n < 0) throw ValidationError("vertex count must be nonnegative");
  Graph g(n);
  SplitMix64 rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_bit()) g.add_edge(u, v);
  return g;
}

inline Graph induced_subgraph(const Graph& g, std::span<const int> s) {
  const int k = static_cast<int>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0 || s[i] >= g.order()) throw ValidationError("invalid selection: index out of range");
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (s[i] == s[j]) throw ValidationError("invalid selection: duplicate index");
  }
  Graph h(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(s[a], s[b])) h.add_edge(a, b);
  return h;
}

inline Graph induced_subgraph(const Graph& g, std::initializer_list<int> s) {
  return induced_subgraph(g, std::span<const int>(s.begin(), s.size()));
}

// Image of g under the relabeling v -> perm[v].
inline Graph relabeled(const Graph& g, std::span<const int> perm) {
  Graph h(g.order());
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.has_edge(u, v)) h.add_edge(perm[u], perm[v]);
  return h;
}

// True iff some x outside s and outside excluded is adjacent to every vertex of s.
inline bool has_outside_dominator(const Graph& g, std::span<const int> s, std::span<const int> excluded) {
  const int words = g.words_per_row();
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(words), ~0ULL);
  if (g.order() % 64 != 0) acc[words - 1] = (1ULL << (g.order() % 64)) - 1;
  for (int v : s) {
    auto r = g.row(v);
    for (int w = 0; w < words; ++w) acc[w] &= r[w];
  }
  for (int v : s) acc[v >> 6] &= ~(1ULL << (v & 63));
  for (int v : excluded) acc[v >> 6] &= ~(1ULL << (v & 63));
  for (auto w : acc)
    if (w != 0) return true;
  return false;
}

inline bool has_outside_dominator(const Graph& g, std::initializer_list<int> s,
                                  std::initializer_list<int> excluded) {
  return has_outside_dominator(g, std::span<const int>(s.begin(), s.size()),
                               std::span<const int>(excluded.begin(), excluded.size()));
}

// Text format: "n m" header then one "u v" line per edge, u < v, 0-indexed.
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  auto es = g.edges();
  os << g.order() << ' ' << es.size() << '\n';
  for (auto [u, v] : es) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph from_edge_list(std::string_view text) {
  std::istringstream is{std::string(text)};
  long n = 0, m = 0;
  if (!(is >> n >> m)) throw ValidationError("bad edge-list header");
  if (n < 0 || m < 0) throw ValidationError("bad edge-list header");
  Graph g(static_cast<int>(n));
  for (long i = 0; i < m; ++i) {
    int u = 0, v = 0;
    if (!(is >> u >> v)) throw ValidationError("truncated edge list");
    if (u >= v) throw ValidationError("edge-list lines must satisfy u < v");
    g.add_edge(u, v);
  }
  return g;
}

// graph6 encoding (column-major upper triangle), single-byte size header, n <= 62.
inline std::string to_graph6(const Graph& g) {
  const int n = g.order();
  if (n > 62) throw ValidationError("size limit: graph6 writer supports n <= 62");
  std::string out;
  out.push_back(static_cast<char>(n + 63));
  int bitpos = 0;
  int cur = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      cur = (cur << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++bitpos == 6) {
        out.push_back(static_cast<char>(cur + 63));
        bitpos = 0;
        cur = 0;
      }
    }
  if (bitpos > 0) out.push_back(static_cast<char>((cur << (6 - bitpos)) + 63));
  return out;
}

inline Graph from_graph6(std::string_view text) {
  if (text.empty()) throw ValidationError("empty graph6 string");
  const int n = static_cast<int>(text[0]) - 63;
  if (n < 0 || n > 62) throw ValidationError("bad graph6 size byte");
  Graph g(n);
  const long need = static_cast<long>(n) * (n - 1) / 2;
  long idx = 0;
  std::size_t pos = 1;
  int avail = 0;
  int cur = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++idx) {
      if (avail == 0) {
        if (pos >= text.size()) throw ValidationError("truncated graph6 string");
        cur = static_cast<int>(text[pos++]) - 63;
        if (cur < 0 || cur > 63) throw ValidationError("bad graph6 byte");
        avail = 6;
      }
      if ((cur >> (avail - 1)) & 1) g.add_edge(i, j);
      --avail;
    }
  (void)need;
  return g;
}

}  // namespace fograph

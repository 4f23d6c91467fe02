#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <vector>

#include "fograph/errors.hpp"
#include "fograph/graph.hpp"

namespace fograph {

inline constexpr int kCanonicalLimit = 8;

// Total-order-comparable encoding of an isomorphism class: the lexicographically
// minimal upper-triangle bit string over all vertex permutations, column-major
// (bit (i,j), i<j, in the order (0,1),(0,2),(1,2),(0,3),...), packed so the
// first bit is most significant. Two graphs have equal codes iff isomorphic.
struct CanonicalCode {
  std::uint32_t bits = 0;
  std::uint8_t k = 0;

  friend constexpr auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

namespace detail {

// Minimal-image search: assign canonical positions one vertex at a time and
// prune any branch whose column prefix exceeds the best found so far.
inline void minimal_image_dfs(const Graph& g, int p, std::vector<int>& perm, std::uint32_t used,
                              std::vector<std::uint32_t>& best, std::vector<int>& best_perm) {
  const int k = g.order();
  if (p == k) {
    best_perm = perm;  // current columns equal best by the descent invariant
    return;
  }
  for (int v = 0; v < k; ++v) {
    if (used & (1u << v)) continue;
    std::uint32_t col = 0;
    for (int i = 0; i < p; ++i) col = (col << 1) | (g.has_edge(perm[i], v) ? 1u : 0u);
    if (col > best[p]) continue;
    if (col < best[p]) {
      best[p] = col;
      for (int q = p + 1; q < k; ++q) best[q] = std::numeric_limits<std::uint32_t>::max();
    }
    perm[p] = v;
    minimal_image_dfs(g, p + 1, perm, used | (1u << v), best, best_perm);
  }
}

}  // namespace detail

// Canonical position -> original vertex, realizing the minimal image.
inline std::vector<int> canonical_permutation(const Graph& g, int limit = kCanonicalLimit) {
  const int k = g.order();
  if (k > limit) throw ValidationError("size limit: canonical form supports n <= " + std::to_string(limit));
  std::vector<std::uint32_t> best(static_cast<std::size_t>(k), std::numeric_limits<std::uint32_t>::max());
  std::vector<int> perm(static_cast<std::size_t>(k), 0), best_perm;
  if (k == 0) return best_perm;
  detail::minimal_image_dfs(g, 0, perm, 0, best, best_perm);
  return best_perm;
}

inline Graph canonical_form(const Graph& g, int limit = kCanonicalLimit) {
  auto perm = canonical_permutation(g, limit);
  const int k = g.order();
  Graph h(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(perm[a], perm[b])) h.add_edge(a, b);
  return h;
}

inline CanonicalCode canonical_code(const Graph& g, int limit = kCanonicalLimit) {
  auto perm = canonical_permutation(g, limit);
  const int k = g.order();
  std::uint32_t bits = 0;
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i) bits = (bits << 1) | (g.has_edge(perm[i], perm[j]) ? 1u : 0u);
  return CanonicalCode{bits, static_cast<std::uint8_t>(k)};
}

inline bool isomorphic(const Graph& g1, const Graph& g2, int limit = kCanonicalLimit) {
  if (g1.order() != g2.order()) return false;
  return canonical_code(g1, limit) == canonical_code(g2, limit);
}

namespace detail {

inline void automorphism_dfs(const Graph& g, int p, std::vector<int>& map, std::uint32_t used, long& count) {
  const int k = g.order();
  if (p == k) {
    ++count;
    return;
  }
  for (int v = 0; v < k; ++v) {
    if (used & (1u << v)) continue;
    bool ok = true;
    for (int i = 0; i < p && ok; ++i)
      if (g.has_edge(map[i], v) != g.has_edge(i, p)) ok = false;
    if (!ok) continue;
    map[p] = v;
    automorphism_dfs(g, p + 1, map, used | (1u << v), count);
  }
}

}  // namespace detail

// Exact |Aut(g)| by pruned permutation search.
inline long automorphism_count(const Graph& g, int limit = kCanonicalLimit) {
  const int k = g.order();
  if (k > limit) throw ValidationError("size limit: automorphism scan supports n <= " + std::to_string(limit));
  if (k == 0) return 1;
  std::vector<int> map(static_cast<std::size_t>(k), 0);
  long count = 0;
  detail::automorphism_dfs(g, 0, map, 0, count);
  return count;
}

}  // namespace fograph

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "fograph/families.hpp"
#include "fograph/formula.hpp"

namespace fograph {

namespace detail {

inline Node atom(NodeKind kind, int a, int b) {
  Node n;
  n.kind = kind;
  n.a = a;
  n.b = b;
  return n;
}

inline Node negate(Node inner) {
  Node n;
  n.kind = NodeKind::Not;
  n.kids.push_back(std::move(inner));
  return n;
}

inline Node adj(int a, int b) { return atom(NodeKind::Adj, a, b); }
inline Node neq(int a, int b) { return negate(atom(NodeKind::Eq, a, b)); }

inline Node quant(NodeKind kind, int var, Node body) {
  Node n;
  n.kind = kind;
  n.a = var;
  n.kids.push_back(std::move(body));
  return n;
}

inline Node conj(std::vector<Node> kids) {
  if (kids.size() == 1) return std::move(kids[0]);
  Node n;
  n.kind = NodeKind::And;
  n.kids = std::move(kids);
  return n;
}

inline Node disj(std::vector<Node> kids) {
  if (kids.size() == 1) return std::move(kids[0]);
  Node n;
  n.kind = NodeKind::Or;
  n.kids = std::move(kids);
  return n;
}

inline std::uint32_t column_bits(std::uint32_t mask, int j) {
  return (mask >> slot_index(0, j)) & ((1u << j) - 1);
}

// Existential core over an induced-pattern disjunction: masks are grouped by
// the adjacency column each new vertex fixes, so equal prefixes share one
// quantifier chain and evaluation prunes as soon as no member pattern matches.
inline Node pattern_core(int j, int k, const std::vector<std::uint32_t>& masks,
                         const std::vector<int>& x, const std::vector<int>& outer,
                         const std::function<Node()>& tail) {
  if (j == k) return tail();
  std::vector<Node> body;
  for (int id : outer) body.push_back(neq(x[static_cast<std::size_t>(j)], id));
  for (int i = 0; i < j; ++i)
    body.push_back(neq(x[static_cast<std::size_t>(j)], x[static_cast<std::size_t>(i)]));
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (auto m : masks) groups[column_bits(m, j)].push_back(m);
  std::vector<Node> branches;
  for (auto& [col, group] : groups) {
    std::vector<Node> with_bits;
    for (int i = 0; i < j; ++i) {
      Node a = adj(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
      with_bits.push_back((col >> i & 1u) ? std::move(a) : negate(std::move(a)));
    }
    with_bits.push_back(pattern_core(j + 1, k, group, x, outer, tail));
    branches.push_back(conj(std::move(with_bits)));
  }
  body.push_back(disj(std::move(branches)));
  return quant(NodeKind::Exists, x[static_cast<std::size_t>(j)], conj(std::move(body)));
}

// All labeled members of the prefix family F^mu, as edge-slot masks.
inline std::vector<std::uint32_t> member_masks(const FamilyChain& chain, int prefix) {
  if (prefix < 0 || prefix > chain.num_prefixes())
    throw ValidationError("empty family: chain prefix out of range");
  std::vector<std::uint32_t> out{0};
  const auto perms = all_permutations(chain.k);
  for (int q = 0; q < prefix; ++q) {
    std::uint32_t base = mask_from_graph(chain.classes[static_cast<std::size_t>(q)].representative);
    for (const auto& p : perms) out.push_back(apply_perm_to_mask(base, p, chain.k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::uint32_t> labelings_of(const Graph& pattern) {
  const int k = pattern.order();
  std::vector<std::uint32_t> out;
  std::uint32_t base = mask_from_graph(pattern);
  for (const auto& p : all_permutations(k)) out.push_back(apply_perm_to_mask(base, p, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// No outside vertex adjacent to all of S; y ~ x_i already forces y outside S.
inline Node x_tail(const std::vector<int>& x, int y) {
  std::vector<Node> body;
  for (int xi : x) body.push_back(adj(y, xi));
  return negate(quant(NodeKind::Exists, y, conj(std::move(body))));
}

// No y outside S and {v1, v2} adjacent to all of S and to at least one of v1, v2.
inline Node y_tail(const std::vector<int>& x, int y, int v1, int v2) {
  std::vector<Node> body;
  for (int xi : x) body.push_back(adj(y, xi));
  body.push_back(disj([&] {
    std::vector<Node> alt;
    alt.push_back(adj(y, v1));
    alt.push_back(adj(y, v2));
    return alt;
  }()));
  body.push_back(neq(y, v1));
  body.push_back(neq(y, v2));
  return negate(quant(NodeKind::Exists, y, conj(std::move(body))));
}

// No y outside S and {v1, v2, v3} adjacent to all of S and either to v3 or to both v1, v2.
inline Node z_tail(const std::vector<int>& x, int y, int v1, int v2, int v3) {
  std::vector<Node> body;
  for (int xi : x) body.push_back(adj(y, xi));
  std::vector<Node> both;
  both.push_back(adj(y, v1));
  both.push_back(adj(y, v2));
  std::vector<Node> alt;
  alt.push_back(adj(y, v3));
  alt.push_back(conj(std::move(both)));
  body.push_back(disj(std::move(alt)));
  body.push_back(neq(y, v1));
  body.push_back(neq(y, v2));
  body.push_back(neq(y, v3));
  return negate(quant(NodeKind::Exists, y, conj(std::move(body))));
}

struct SentenceVars {
  Formula formula;
  std::vector<int> x;
  int y = -1;
  std::vector<int> v;
};

inline SentenceVars make_vars(int k, int num_v) {
  SentenceVars sv;
  for (int i = 1; i <= num_v; ++i) sv.v.push_back(sv.formula.var_id("v" + std::to_string(i)));
  for (int i = 1; i <= k; ++i) sv.x.push_back(sv.formula.var_id("x" + std::to_string(i)));
  sv.y = sv.formula.var_id("y");
  return sv;
}

}  // namespace detail

// Extension axiom phi_k: for every k-set of distinct vertices and every
// partition A | B, some outside vertex is adjacent to all of A and none of B.
// Uses exactly k+1 variables.
inline Formula extension_axiom(int k) {
  if (k < 1) throw ValidationError("extension axiom requires k >= 1");
  auto sv = detail::make_vars(k, 0);
  std::vector<Node> partitions;
  for (std::uint32_t a = 0; a < (1u << k); ++a) {
    std::vector<Node> body;
    for (int i = 0; i < k; ++i) body.push_back(detail::neq(sv.y, sv.x[static_cast<std::size_t>(i)]));
    for (int i = 0; i < k; ++i) {
      Node e = detail::adj(sv.y, sv.x[static_cast<std::size_t>(i)]);
      body.push_back((a >> i & 1u) ? std::move(e) : detail::negate(std::move(e)));
    }
    partitions.push_back(detail::quant(NodeKind::Exists, sv.y, detail::conj(std::move(body))));
  }
  Node consequent = detail::conj(std::move(partitions));
  std::vector<Node> distinct;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      distinct.push_back(detail::neq(sv.x[static_cast<std::size_t>(i)], sv.x[static_cast<std::size_t>(j)]));
  Node body = distinct.empty() ? std::move(consequent) : [&] {
    std::vector<Node> alt;
    alt.push_back(detail::negate(detail::conj(std::move(distinct))));
    alt.push_back(std::move(consequent));
    return detail::disj(std::move(alt));
  }();
  for (int i = k - 1; i >= 0; --i)
    body = detail::quant(NodeKind::Forall, sv.x[static_cast<std::size_t>(i)], std::move(body));
  sv.formula.mutable_root() = std::move(body);
  return std::move(sv.formula);
}

// {X^F_k = 0}: no k-set of distinct vertices that induces a member of F^prefix
// and has no outside dominator. Exactly k+1 variables.
inline Formula build_x_sentence(const FamilyChain& chain, int prefix) {
  if (chain.k < 2) throw ValidationError("X sentence requires k >= 2");
  auto masks = detail::member_masks(chain, prefix);
  auto sv = detail::make_vars(chain.k, 0);
  Node exists = detail::pattern_core(0, chain.k, masks, sv.x, {},
                                     [&] { return detail::x_tail(sv.x, sv.y); });
  sv.formula.mutable_root() = detail::negate(std::move(exists));
  return std::move(sv.formula);
}

// {Y^F_k = 0}; exactly k+3 variables.
inline Formula build_y_sentence(const FamilyChain& chain, int prefix) {
  if (chain.k < 2) throw ValidationError("Y sentence requires k >= 2");
  auto masks = detail::member_masks(chain, prefix);
  auto sv = detail::make_vars(chain.k, 2);
  std::vector<int> outer{sv.v[0], sv.v[1]};
  Node core = detail::pattern_core(0, chain.k, masks, sv.x, outer,
                                   [&] { return detail::y_tail(sv.x, sv.y, sv.v[0], sv.v[1]); });
  std::vector<Node> body;
  body.push_back(detail::neq(sv.v[0], sv.v[1]));
  body.push_back(std::move(core));
  Node exists = detail::quant(NodeKind::Exists, sv.v[0],
                              detail::quant(NodeKind::Exists, sv.v[1], detail::conj(std::move(body))));
  sv.formula.mutable_root() = detail::negate(std::move(exists));
  return std::move(sv.formula);
}

// {Z^F_k = 0}; exactly k+4 variables.
inline Formula build_z_sentence(const FamilyChain& chain, int prefix) {
  if (chain.k < 2) throw ValidationError("Z sentence requires k >= 2");
  auto masks = detail::member_masks(chain, prefix);
  auto sv = detail::make_vars(chain.k, 3);
  std::vector<int> outer{sv.v[0], sv.v[1], sv.v[2]};
  Node core = detail::pattern_core(0, chain.k, masks, sv.x, outer, [&] {
    return detail::z_tail(sv.x, sv.y, sv.v[0], sv.v[1], sv.v[2]);
  });
  std::vector<Node> body;
  body.push_back(detail::neq(sv.v[0], sv.v[1]));
  body.push_back(detail::neq(sv.v[0], sv.v[2]));
  body.push_back(detail::neq(sv.v[1], sv.v[2]));
  body.push_back(std::move(core));
  Node exists = detail::quant(
      NodeKind::Exists, sv.v[0],
      detail::quant(NodeKind::Exists, sv.v[1],
                    detail::quant(NodeKind::Exists, sv.v[2], detail::conj(std::move(body)))));
  sv.formula.mutable_root() = detail::negate(std::move(exists));
  return std::move(sv.formula);
}

enum class WitnessMode { X, Y };

// Positive existence of a k-set inducing a copy of pattern that is
// non-extendible in the mode's sense; k+1 (X) or k+3 (Y) variables.
inline Formula build_witness_sentence(const Graph& pattern, WitnessMode mode) {
  const int k = pattern.order();
  if (k < 1 || k > kCanonicalLimit)
    throw ValidationError("size limit: witness pattern supports 1 <= n <= 8");
  auto masks = detail::labelings_of(pattern);
  if (mode == WitnessMode::X) {
    auto sv = detail::make_vars(k, 0);
    Node core = detail::pattern_core(0, k, masks, sv.x, {},
                                     [&] { return detail::x_tail(sv.x, sv.y); });
    sv.formula.mutable_root() = std::move(core);
    return std::move(sv.formula);
  }
  auto sv = detail::make_vars(k, 2);
  std::vector<int> outer{sv.v[0], sv.v[1]};
  Node core = detail::pattern_core(0, k, masks, sv.x, outer,
                                   [&] { return detail::y_tail(sv.x, sv.y, sv.v[0], sv.v[1]); });
  std::vector<Node> body;
  body.push_back(detail::neq(sv.v[0], sv.v[1]));
  body.push_back(std::move(core));
  sv.formula.mutable_root() = detail::quant(
      NodeKind::Exists, sv.v[0], detail::quant(NodeKind::Exists, sv.v[1], detail::conj(std::move(body))));
  return std::move(sv.formula);
}

}  // namespace fograph

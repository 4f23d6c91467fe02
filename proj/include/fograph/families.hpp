#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "fograph/canonical.hpp"
#include "fograph/errors.hpp"
#include "fograph/graph.hpp"

namespace fograph {

inline constexpr int kFamilyLimit = 8;

// One isomorphism class of graphs on [k].
struct GraphClass {
  Graph representative;  // canonical form
  CanonicalCode code;
  int edge_count = 0;
  long aut_size = 1;
  long labeled_count = 1;  // k! / aut_size
};

// Nested downward-closed chain F^0 subset F^1 subset ...; F^0 is the empty
// graph only and is not a class entry. classes[i] is the class added at step
// i+1; cum_sizes[i] = |F^i| for i = 0..classes.size().
struct FamilyChain {
  int k = 0;
  std::vector<GraphClass> classes;
  std::vector<long> cum_sizes;

  int num_prefixes() const { return static_cast<int>(classes.size()); }

  long family_size(int prefix) const {
    if (prefix < 0 || prefix > num_prefixes()) throw ValidationError("chain prefix out of range");
    return cum_sizes[static_cast<std::size_t>(prefix)];
  }

  // Chain position of an isomorphism class: 0 for the empty graph, i for
  // classes[i-1]; -1 if not found (cannot happen for complete chains).
  int position_of(const CanonicalCode& code) const {
    auto it = index_.find(key(code));
    return it == index_.end() ? -1 : it->second;
  }

  void build_index() {
    index_.clear();
    for (std::size_t i = 0; i < classes.size(); ++i)
      index_.emplace(key(classes[i].code), static_cast<int>(i) + 1);
  }

 private:
  static std::uint64_t key(const CanonicalCode& c) {
    return (static_cast<std::uint64_t>(c.k) << 32) | c.bits;
  }
  std::unordered_map<std::uint64_t, int> index_;
};

namespace detail {

inline int slot_index(int i, int j) { return j * (j - 1) / 2 + i; }  // requires i < j

inline Graph graph_from_mask(std::uint32_t mask, int k) {
  Graph g(k);
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> slot_index(i, j) & 1u) g.add_edge(i, j);
  return g;
}

inline std::uint32_t mask_from_graph(const Graph& g) {
  std::uint32_t mask = 0;
  for (int j = 1; j < g.order(); ++j)
    for (int i = 0; i < j; ++i)
      if (g.has_edge(i, j)) mask |= 1u << slot_index(i, j);
  return mask;
}

inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::uint32_t apply_perm_to_mask(std::uint32_t mask, const std::vector<int>& perm, int k) {
  std::uint32_t out = 0;
  for (int j = 1; j < k; ++j)
    for (int i = 0; i < j; ++i)
      if (mask >> slot_index(i, j) & 1u) {
        int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>(j)];
        if (a > b) std::swap(a, b);
        out |= 1u << slot_index(a, b);
      }
  return out;
}

inline GraphClass make_class(const Graph& rep_any_labeling, int k) {
  GraphClass c;
  c.representative = canonical_form(rep_any_labeling);
  c.code = canonical_code(c.representative);
  c.edge_count = static_cast<int>(c.representative.edge_count());
  c.aut_size = automorphism_count(c.representative);
  long kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  c.labeled_count = kfact / c.aut_size;
  return c;
}

// All labeled graphs, deduplicated by marking whole orbits. Feasible for k <= 6.
inline std::vector<GraphClass> enumerate_by_orbit_marking(int k) {
  const int nb = k * (k - 1) / 2;
  const auto perms = all_permutations(k);
  std::vector<std::uint8_t> seen(1u << nb, 0);
  std::vector<GraphClass> out;
  for (std::uint32_t mask = 0; mask < (1u << nb); ++mask) {
    if (seen[mask]) continue;
    long orbit = 0;
    for (const auto& p : perms) {
      std::uint32_t m2 = apply_perm_to_mask(mask, p, k);
      if (!seen[m2]) {
        seen[m2] = 1;
        ++orbit;
      }
    }
    GraphClass c = make_class(graph_from_mask(mask, k), k);
    if (c.labeled_count != orbit) throw Error("internal", "orbit size mismatch in class enumeration");
    out.push_back(std::move(c));
  }
  return out;
}

// Incremental edge addition from the previous edge level, deduplicated by
// canonical code; avoids touching all 2^(k choose 2) masks for k in {7, 8}.
inline std::vector<GraphClass> enumerate_by_edge_addition(int k) {
  std::vector<GraphClass> out;
  out.push_back(make_class(Graph(k), k));
  std::vector<Graph> level{Graph(k)};
  std::unordered_set<std::uint64_t> seen;
  const int max_edges = k * (k - 1) / 2;
  for (int e = 0; e < max_edges; ++e) {
    std::vector<Graph> next;
    seen.clear();
    for (const auto& g : level)
      for (int j = 1; j < k; ++j)
        for (int i = 0; i < j; ++i) {
          if (g.has_edge(i, j)) continue;
          Graph h = g;
          h.add_edge(i, j);
          auto code = canonical_code(h);
          std::uint64_t key = (static_cast<std::uint64_t>(code.k) << 32) | code.bits;
          if (!seen.insert(key).second) continue;
          GraphClass c = make_class(h, k);
          next.push_back(c.representative);
          out.push_back(std::move(c));
        }
    level = std::move(next);
  }
  return out;
}

}  // namespace detail

inline std::vector<GraphClass> enumerate_classes(int k, int limit = kFamilyLimit) {
  if (k < 1 || k > limit)
    throw ValidationError("size limit: class enumeration supports 1 <= k <= " + std::to_string(limit));
  auto classes = k <= 6 ? detail::enumerate_by_orbit_marking(k) : detail::enumerate_by_edge_addition(k);
  std::sort(classes.begin(), classes.end(), [](const GraphClass& a, const GraphClass& b) {
    if (a.edge_count != b.edge_count) return a.edge_count < b.edge_count;
    return a.code < b.code;
  });
  return classes;
}

// Classes ordered by nondecreasing edge count (ties by ascending code); every
// prefix is downward closed because any proper subgraph has strictly fewer edges.
inline FamilyChain build_chain(int k, int limit = kFamilyLimit) {
  FamilyChain chain;
  chain.k = k;
  auto classes = enumerate_classes(k, limit);
  chain.cum_sizes.push_back(1);
  for (auto& c : classes) {
    if (c.edge_count == 0) continue;  // F^0, not a class entry
    chain.cum_sizes.push_back(chain.cum_sizes.back() + c.labeled_count);
    chain.classes.push_back(std::move(c));
  }
  chain.build_index();
  return chain;
}

inline GraphClass asymmetric_class(int k, int limit = kFamilyLimit) {
  if (k >= 2 && k <= 5)
    throw ValidationError("no asymmetric graph on " + std::to_string(k) +
                          " vertices (smallest beyond a single vertex has 6)");
  for (auto& c : enumerate_classes(k, limit))
    if (c.aut_size == 1) return c;
  throw Error("internal", "no asymmetric class found");
}

inline bool chain_contains(const FamilyChain& chain, int prefix, const Graph& g) {
  if (g.order() != chain.k) throw ValidationError("dimension mismatch: graph order differs from chain k");
  if (prefix < 0 || prefix > chain.num_prefixes()) throw ValidationError("chain prefix out of range");
  if (g.edge_count() == 0) return true;
  int pos = chain.position_of(canonical_code(g));
  return pos >= 1 && pos <= prefix;
}

inline bool verify_downward_closed(const FamilyChain& chain, int prefix) {
  if (prefix < 0 || prefix > chain.num_prefixes()) throw ValidationError("chain prefix out of range");
  for (int q = 1; q <= prefix; ++q) {
    const Graph& rep = chain.classes[static_cast<std::size_t>(q - 1)].representative;
    for (auto [u, v] : rep.edges()) {
      Graph h = rep;
      h.remove_edge(u, v);
      if (h.edge_count() == 0) continue;
      int pos = chain.position_of(canonical_code(h));
      if (pos < 1 || pos > prefix) return false;
    }
  }
  return true;
}

// mask -> chain position, for exact counters; mask bit (i,j) is slot j(j-1)/2+i.
struct ClassTable {
  int k = 0;
  std::vector<std::uint16_t> position;

  int position_of(std::uint32_t mask) const { return position[mask]; }
};

inline ClassTable build_class_table(const FamilyChain& chain) {
  if (chain.k > 7) throw ValidationError("size limit: class table supports k <= 7");
  ClassTable table;
  table.k = chain.k;
  const int nb = chain.k * (chain.k - 1) / 2;
  table.position.assign(1u << nb, 0);
  const auto perms = detail::all_permutations(chain.k);
  for (std::size_t q = 0; q < chain.classes.size(); ++q) {
    std::uint32_t mask = detail::mask_from_graph(chain.classes[q].representative);
    for (const auto& p : perms)
      table.position[detail::apply_perm_to_mask(mask, p, chain.k)] = static_cast<std::uint16_t>(q + 1);
  }
  return table;
}

inline nlohmann::json chain_to_json(const FamilyChain& chain) {
  nlohmann::json j;
  j["k"] = chain.k;
  j["prefix_sizes"] = chain.cum_sizes;
  auto& cl = j["classes"] = nlohmann::json::array();
  for (const auto& c : chain.classes)
    cl.push_back({{"edge_count", c.edge_count},
                  {"aut_size", c.aut_size},
                  {"labeled_count", c.labeled_count},
                  {"graph6", to_graph6(c.representative)}});
  return j;
}

}  // namespace fograph

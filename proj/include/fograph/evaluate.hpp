#pragma once

#include <vector>

#include "fograph/formula.hpp"
#include "fograph/graph.hpp"

namespace fograph {

namespace detail {

inline bool eval_node(const Node& n, const Graph& g, std::vector<int>& env) {
  switch (n.kind) {
    case NodeKind::True:
      return true;
    case NodeKind::False:
      return false;
    case NodeKind::Adj:
      return g.has_edge(env[static_cast<std::size_t>(n.a)], env[static_cast<std::size_t>(n.b)]);
    case NodeKind::Eq:
      return env[static_cast<std::size_t>(n.a)] == env[static_cast<std::size_t>(n.b)];
    case NodeKind::Not:
      return !eval_node(n.kids[0], g, env);
    case NodeKind::And:
      for (const auto& k : n.kids)
        if (!eval_node(k, g, env)) return false;
      return true;
    case NodeKind::Or:
      for (const auto& k : n.kids)
        if (eval_node(k, g, env)) return true;
      return false;
    case NodeKind::Exists: {
      int saved = env[static_cast<std::size_t>(n.a)];
      for (int v = 0; v < g.order(); ++v) {
        env[static_cast<std::size_t>(n.a)] = v;
        if (eval_node(n.kids[0], g, env)) {
          env[static_cast<std::size_t>(n.a)] = saved;
          return true;
        }
      }
      env[static_cast<std::size_t>(n.a)] = saved;
      return false;
    }
    case NodeKind::Forall: {
      int saved = env[static_cast<std::size_t>(n.a)];
      for (int v = 0; v < g.order(); ++v) {
        env[static_cast<std::size_t>(n.a)] = v;
        if (!eval_node(n.kids[0], g, env)) {
          env[static_cast<std::size_t>(n.a)] = saved;
          return false;
        }
      }
      env[static_cast<std::size_t>(n.a)] = saved;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Standard FO semantics over (V, adjacency, equality); quantifiers range over
// all vertices, so distinct variables may take equal values unless the formula
// forbids it. f must be a sentence.
inline bool evaluate(const Formula& f, const Graph& g) {
  std::vector<int> depth(f.names().size(), 0);
  int free = detail::find_free_var(f.root(), depth);
  if (free >= 0)
    throw ValidationError("free variable '" + f.names()[static_cast<std::size_t>(free)] +
                          "' at evaluation");
  std::vector<int> env(f.names().size(), -1);
  return detail::eval_node(f.root(), g, env);
}

}  // namespace fograph

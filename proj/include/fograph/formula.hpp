#pragma once

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fograph/errors.hpp"

namespace fograph {

enum class NodeKind { True, False, Adj, Eq, Not, And, Or, Exists, Forall };

// FO formula over the vocabulary {adjacency, equality}. Variables are named;
// reuse across scopes is permitted and inner quantifiers shadow outer ones.
// Nodes refer to variables by index into the owning Formula's name table.
struct Node {
  NodeKind kind = NodeKind::True;
  int a = -1;  // quantified variable, or left atom variable
  int b = -1;  // right atom variable
  std::vector<Node> kids;
};

class Formula {
 public:
  Formula() = default;
  Formula(Node root, std::vector<std::string> names) : root_(std::move(root)), names_(std::move(names)) {}

  const Node& root() const { return root_; }
  const std::vector<std::string>& names() const { return names_; }

  int var_id(const std::string& name) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    names_.push_back(name);
    return static_cast<int>(names_.size()) - 1;
  }

  Node& mutable_root() { return root_; }

  bool operator==(const Formula&) const = default;

 private:
  Node root_;
  std::vector<std::string> names_;
};

namespace detail {

inline void collect_vars(const Node& n, std::set<int>& vars) {
  switch (n.kind) {
    case NodeKind::Adj:
    case NodeKind::Eq:
      vars.insert(n.a);
      vars.insert(n.b);
      break;
    case NodeKind::Exists:
    case NodeKind::Forall:
      vars.insert(n.a);
      break;
    default:
      break;
  }
  for (const auto& k : n.kids) collect_vars(k, vars);
}

// Returns the id of some variable occurring free, or -1 if none.
inline int find_free_var(const Node& n, std::vector<int>& bound_depth) {
  switch (n.kind) {
    case NodeKind::Adj:
    case NodeKind::Eq:
      if (bound_depth[static_cast<std::size_t>(n.a)] == 0) return n.a;
      if (bound_depth[static_cast<std::size_t>(n.b)] == 0) return n.b;
      return -1;
    case NodeKind::Exists:
    case NodeKind::Forall: {
      ++bound_depth[static_cast<std::size_t>(n.a)];
      int r = find_free_var(n.kids[0], bound_depth);
      --bound_depth[static_cast<std::size_t>(n.a)];
      return r;
    }
    default:
      for (const auto& k : n.kids) {
        int r = find_free_var(k, bound_depth);
        if (r >= 0) return r;
      }
      return -1;
  }
}

inline void print_node(const Node& n, const std::vector<std::string>& names, std::string& out) {
  switch (n.kind) {
    case NodeKind::True:
      out += 'T';
      break;
    case NodeKind::False:
      out += 'F';
      break;
    case NodeKind::Adj:
    case NodeKind::Eq:
      out += '(';
      out += names[static_cast<std::size_t>(n.a)];
      out += n.kind == NodeKind::Adj ? " ~ " : " = ";
      out += names[static_cast<std::size_t>(n.b)];
      out += ')';
      break;
    case NodeKind::Not:
      out += '!';
      print_node(n.kids[0], names, out);
      break;
    case NodeKind::And:
    case NodeKind::Or:
      out += '(';
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) out += n.kind == NodeKind::And ? " & " : " | ";
        print_node(n.kids[i], names, out);
      }
      out += ')';
      break;
    case NodeKind::Exists:
    case NodeKind::Forall:
      out += n.kind == NodeKind::Exists ? 'E' : 'A';
      out += names[static_cast<std::size_t>(n.a)];
      out += ' ';
      print_node(n.kids[0], names, out);
      break;
  }
}

}  // namespace detail

// Number of distinct variable names occurring in f (not quantifier occurrences).
inline int num_variables(const Formula& f) {
  std::set<int> vars;
  detail::collect_vars(f.root(), vars);
  return static_cast<int>(vars.size());
}

// Deterministic text form in the grammar accepted by parse(); every connective
// group and atom is parenthesized so parse(print(f)) == f structurally.
inline std::string print(const Formula& f) {
  std::string out;
  detail::print_node(f.root(), f.names(), out);
  return out;
}

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    Node root = parse_or();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input");
    Formula f(std::move(root), std::move(names_));
    std::vector<int> depth(f.names().size(), 0);
    int free = find_free_var(f.root(), depth);
    if (free >= 0)
      throw ValidationError("unbound variable '" + f.names()[static_cast<std::size_t>(free)] + "'");
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int parse_var() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError(pos_, "expected a variable");
    ++pos_;
    while (pos_ < text_.size() && (std::islower(static_cast<unsigned char>(text_[pos_])) ||
                                   std::isdigit(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    names_.push_back(std::move(name));
    return static_cast<int>(names_.size()) - 1;
  }

  Node parse_or() {
    Node first = parse_and();
    if (peek() != '|') return first;
    Node out;
    out.kind = NodeKind::Or;
    out.kids.push_back(std::move(first));
    while (eat('|')) out.kids.push_back(parse_and());
    return out;
  }

  Node parse_and() {
    Node first = parse_unary();
    if (peek() != '&') return first;
    Node out;
    out.kind = NodeKind::And;
    out.kids.push_back(std::move(first));
    while (eat('&')) out.kids.push_back(parse_unary());
    return out;
  }

  Node parse_unary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      Node out;
      out.kind = NodeKind::Not;
      out.kids.push_back(parse_unary());
      return out;
    }
    if (c == 'E' || c == 'A') {
      ++pos_;
      Node out;
      out.kind = c == 'E' ? NodeKind::Exists : NodeKind::Forall;
      out.a = parse_var();
      out.kids.push_back(parse_unary());
      return out;
    }
    if (c == 'T' || c == 'F') {
      ++pos_;
      Node out;
      out.kind = c == 'T' ? NodeKind::True : NodeKind::False;
      return out;
    }
    if (c == '(') {
      ++pos_;
      Node inner = parse_or();
      if (!eat(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::islower(static_cast<unsigned char>(c))) return parse_atom();
    throw SyntaxError(pos_, "unexpected character");
  }

  Node parse_atom() {
    Node out;
    out.a = parse_var();
    skip_ws();
    std::size_t op_pos = pos_;
    if (pos_ >= text_.size() || (text_[pos_] != '~' && text_[pos_] != '='))
      throw SyntaxError(pos_, "expected '~' or '=' in atom");
    out.kind = text_[pos_] == '~' ? NodeKind::Adj : NodeKind::Eq;
    ++pos_;
    skip_ws();
    if (pos_ >= text_.size() || !std::islower(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError(op_pos, "incomplete atom: missing right-hand variable");
    out.b = parse_var();
    return out;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

}  // namespace detail

// Parses a sentence. Grammar (ASCII): quantifiers "Ex"/"Ax", connectives
// "&" "|" "!", atoms "x ~ y" and "x = y", parentheses, constants "T"/"F".
// Variables are a lowercase letter followed by lowercase letters or digits.
// Throws SyntaxError with a byte offset, or ValidationError for free variables.
inline Formula parse(std::string_view text) { return detail::Parser(text).run(); }

}  // namespace fograph

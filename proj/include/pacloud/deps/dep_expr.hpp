// Copyright 2026 The Pacloud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pacloud/core/atom.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

struct DependencyExpr;

/// "flag? ( ... )" or, when negated, "!flag? ( ... )".
struct ConditionalNode {
  std::string flag;
  bool negated = false;
  std::vector<DependencyExpr> children;
};

/// A plain "( ... )" group. The root of every parsed string is a group.
struct GroupNode {
  std::vector<DependencyExpr> children;
};

struct DependencyExpr {
  std::variant<DependencyAtom, ConditionalNode, GroupNode> node;

  bool is_atom() const { return std::holds_alternative<DependencyAtom>(node); }
  bool is_conditional() const { return std::holds_alternative<ConditionalNode>(node); }
  bool is_group() const { return std::holds_alternative<GroupNode>(node); }
  const DependencyAtom& atom() const { return std::get<DependencyAtom>(node); }
  const ConditionalNode& conditional() const { return std::get<ConditionalNode>(node); }
  const GroupNode& group() const { return std::get<GroupNode>(node); }
  const std::vector<DependencyExpr>& children() const {
    return is_group() ? group().children : conditional().children;
  }
};

bool operator==(const DependencyExpr& a, const DependencyExpr& b);

inline bool operator==(const ConditionalNode& a, const ConditionalNode& b) {
  return a.flag == b.flag && a.negated == b.negated && a.children == b.children;
}
inline bool operator==(const GroupNode& a, const GroupNode& b) { return a.children == b.children; }
inline bool operator==(const DependencyExpr& a, const DependencyExpr& b) { return a.node == b.node; }

inline DependencyExpr make_atom_expr(DependencyAtom atom) { return DependencyExpr{std::move(atom)}; }
inline DependencyExpr make_conditional(std::string flag, bool negated, std::vector<DependencyExpr> children) {
  return DependencyExpr{ConditionalNode{std::move(flag), negated, std::move(children)}};
}
inline DependencyExpr make_group(std::vector<DependencyExpr> children) {
  return DependencyExpr{GroupNode{std::move(children)}};
}

namespace detail {

inline std::vector<std::string> tokenize_dependencies(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      flush();
    } else if (c == '(' || c == ')') {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

class DependencyParser {
 public:
  explicit DependencyParser(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {}

  DependencyExpr parse_root() {
    auto children = parse_sequence(/*nested=*/false);
    return make_group(std::move(children));
  }

 private:
  std::vector<DependencyExpr> parse_sequence(bool nested) {
    std::vector<DependencyExpr> out;
    while (pos_ < tokens_.size()) {
      const std::string& tok = tokens_[pos_];
      if (tok == ")") {
        if (!nested) throw Error(Errc::unbalanced_parenthesis, "unexpected \")\"");
        ++pos_;
        return out;
      }
      ++pos_;
      if (tok == "(") {
        out.push_back(make_group(parse_sequence(true)));
      } else if (tok == "||" || tok == "^^" || tok == "??") {
        throw Error(Errc::unsupported_ebuild_construct, "\"" + tok + " ( ... )\" choice groups are not supported");
      } else if (tok.size() > 1 && tok.back() == '?') {
        bool negated = tok.front() == '!';
        std::string flag = tok.substr(negated ? 1 : 0, tok.size() - (negated ? 2 : 1));
        if (!is_valid_use_flag(flag)) throw Error(Errc::malformed_use_flag, "invalid USE flag in \"" + tok + "\"");
        if (pos_ >= tokens_.size() || tokens_[pos_] != "(") {
          throw Error(Errc::dangling_conditional, "\"" + tok + "\" is not followed by \"(\"");
        }
        ++pos_;
        auto children = parse_sequence(true);
        if (children.empty()) throw Error(Errc::dangling_conditional, "\"" + tok + "\" guards an empty group");
        out.push_back(make_conditional(std::move(flag), negated, std::move(children)));
      } else {
        out.push_back(make_atom_expr(parse_atom(tok)));
      }
    }
    if (nested) throw Error(Errc::unbalanced_parenthesis, "missing \")\"");
    return out;
  }

  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

inline std::string render_node(const DependencyExpr& expr, bool root) {
  auto join = [](const std::vector<DependencyExpr>& children) {
    std::string out;
    for (const auto& child : children) {
      if (!out.empty()) out += ' ';
      out += render_node(child, false);
    }
    return out;
  };
  auto wrap = [](std::string head, const std::string& body) {
    head += body.empty() ? "( )" : "( " + body + " )";
    return head;
  };
  if (expr.is_atom()) return expr.atom().str();
  if (expr.is_conditional()) {
    const auto& c = expr.conditional();
    return wrap((c.negated ? "!" : "") + c.flag + "? ", join(c.children));
  }
  if (root) return join(expr.group().children);
  return wrap("", join(expr.group().children));
}

}  // namespace detail

/// Parses a whitespace separated dependency string with nested USE
/// conditionals. The result is always a group; empty input yields an empty
/// group.
inline DependencyExpr parse_dep_string(std::string_view text) {
  return detail::DependencyParser(detail::tokenize_dependencies(text)).parse_root();
}

/// Canonical single-spaced rendering: "a? ( cat/p ) >=cat/q-1".
inline std::string render_dep_expr(const DependencyExpr& expr) {
  return detail::render_node(expr, expr.is_group());
}

namespace detail {

inline void collect_enabled(const DependencyExpr& expr, const UseFlagSet& enabled, std::vector<DependencyAtom>& out) {
  if (expr.is_atom()) {
    out.push_back(expr.atom());
    return;
  }
  if (expr.is_conditional()) {
    const auto& c = expr.conditional();
    if (enabled.contains(c.flag) == c.negated) return;
  }
  for (const auto& child : expr.children()) collect_enabled(child, enabled, out);
}

}  // namespace detail

/// Left-to-right list of the atoms whose guarding conditionals all hold.
/// Duplicates are kept.
inline std::vector<DependencyAtom> eval_use_conditionals(const DependencyExpr& expr, const UseFlagSet& enabled) {
  std::vector<DependencyAtom> out;
  detail::collect_enabled(expr, enabled, out);
  return out;
}

}  // namespace pacloud

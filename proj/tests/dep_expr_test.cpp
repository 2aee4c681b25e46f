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

#include <gtest/gtest.h>

#include "pacloud/deps/dep_expr.hpp"
#include "support.hpp"

using namespace pacloud;

namespace {

DependencyExpr A(const char* text) { return make_atom_expr(parse_atom(text)); }

std::vector<std::string> strs(const std::vector<DependencyAtom>& atoms) {
  std::vector<std::string> out;
  for (const auto& a : atoms) out.push_back(a.str());
  return out;
}

Errc parse_error(const char* text) {
  try {
    parse_dep_string(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted " << text;
  return Errc::invalid_argument;
}

const char* kNested = "a? ( b? ( cat/p ) cat/q )";

}  // namespace

TEST(ParseDepString, SingleAtom) {
  EXPECT_EQ(parse_dep_string(">=sys-libs/ncurses-6.0"), make_group({A(">=sys-libs/ncurses-6.0")}));
}

TEST(ParseDepString, Conditional) {
  EXPECT_EQ(parse_dep_string("gtk? ( x11-libs/gtk+ )"), make_group({make_conditional("gtk", false, {A("x11-libs/gtk+")})}));
  EXPECT_EQ(parse_dep_string("!gtk? ( x11-libs/gtk+ )"), make_group({make_conditional("gtk", true, {A("x11-libs/gtk+")})}));
}

TEST(ParseDepString, Nested) {
  auto expected =
      make_group({make_conditional("a", false, {make_conditional("b", false, {A("cat/p")}), A("cat/q")})});
  EXPECT_EQ(parse_dep_string(kNested), expected);
  // parentheses need no surrounding whitespace
  EXPECT_EQ(parse_dep_string("a?(b?(cat/p)cat/q)"), expected);
}

TEST(ParseDepString, EmptyAndPlainGroups) {
  EXPECT_EQ(parse_dep_string(""), make_group({}));
  EXPECT_EQ(parse_dep_string("  \n\t"), make_group({}));
  EXPECT_EQ(parse_dep_string("( cat/a ( ) )"), make_group({make_group({A("cat/a"), make_group({})})}));
}

TEST(ParseDepString, Errors) {
  EXPECT_EQ(parse_error("a? ( cat/p"), Errc::unbalanced_parenthesis);
  EXPECT_EQ(parse_error("cat/p )"), Errc::unbalanced_parenthesis);
  EXPECT_EQ(parse_error("a? cat/p"), Errc::dangling_conditional);
  EXPECT_EQ(parse_error("a?"), Errc::dangling_conditional);
  EXPECT_EQ(parse_error("a? ( )"), Errc::dangling_conditional);
  EXPECT_EQ(parse_error(">=cat/p"), Errc::malformed_atom);
  EXPECT_EQ(parse_error(">=cat/p-1_beta"), Errc::malformed_atom);
  EXPECT_EQ(parse_error("|| ( cat/a cat/b )"), Errc::unsupported_ebuild_construct);
}

TEST(EvalUseConditionals, NestedExamples) {
  auto expr = parse_dep_string(kNested);
  EXPECT_EQ(strs(eval_use_conditionals(expr, {"a"})), (std::vector<std::string>{"cat/q"}));
  EXPECT_EQ(strs(eval_use_conditionals(expr, {"a", "b"})), (std::vector<std::string>{"cat/p", "cat/q"}));
  EXPECT_TRUE(eval_use_conditionals(expr, {}).empty());
  EXPECT_TRUE(eval_use_conditionals(expr, {"b"}).empty());
}

TEST(EvalUseConditionals, NegatedAndDuplicates) {
  auto expr = parse_dep_string("cat/a !x? ( cat/b ) x? ( cat/a )");
  EXPECT_EQ(strs(eval_use_conditionals(expr, {})), (std::vector<std::string>{"cat/a", "cat/b"}));
  EXPECT_EQ(strs(eval_use_conditionals(expr, {"x"})), (std::vector<std::string>{"cat/a", "cat/a"}));
}

TEST(RenderDepExpr, Canonical) {
  EXPECT_EQ(render_dep_expr(parse_dep_string("  a?(  b? (cat/p)\n cat/q)  ")), kNested);
  EXPECT_EQ(render_dep_expr(parse_dep_string("")), "");
}

TEST(DepExprProperty, RenderParseRoundTrip) {
  pacloud::testing::TreeGenerator gen(99);
  for (int i = 0; i < 500; ++i) {
    auto tree = gen.root();
    auto text = render_dep_expr(tree);
    EXPECT_EQ(parse_dep_string(text), tree) << text;
    EXPECT_EQ(render_dep_expr(parse_dep_string(text)), text);
  }
}

TEST(DepExprProperty, AgreesWithPathConditionOracle) {
  pacloud::testing::TreeGenerator gen(2024);
  for (int i = 0; i < 500; ++i) {
    auto tree = gen.root();
    for (unsigned mask = 0; mask < 64; ++mask) {
      ASSERT_EQ(eval_use_conditionals(tree, pacloud::testing::flags_from_mask(mask)),
                pacloud::testing::path_condition_oracle(tree, mask))
          << render_dep_expr(tree) << " mask " << mask;
    }
  }
}

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

#include <algorithm>
#include <random>
#include <vector>

#include "pacloud/core/atom.hpp"
#include "pacloud/core/version.hpp"

using namespace pacloud;

namespace {

Version V(std::string_view s) { return parse_version(s); }

std::vector<Version> fig8_versions() { return {V("5.9-r101"), V("6.0-r1"), V("6.0-r2"), V("6.1-r2")}; }

Version random_version(std::mt19937& rng) {
  Version v;
  v.components.clear();
  std::uniform_int_distribution<int> len(1, 3), comp(0, 3), coin(0, 3), letter(0, 2), rev(0, 2);
  for (int i = 0, n = len(rng); i < n; ++i) v.components.push_back(static_cast<std::uint64_t>(comp(rng)));
  if (coin(rng) == 0) v.letter = static_cast<char>('a' + letter(rng));
  v.revision = static_cast<std::uint64_t>(rev(rng));
  return v;
}

}  // namespace

TEST(ParseVersion, RevisionAndComponents) {
  auto v = V("6.1-r2");
  EXPECT_EQ(v.components, (std::vector<std::uint64_t>{6, 1}));
  EXPECT_FALSE(v.letter);
  EXPECT_EQ(v.revision, 2u);
}

TEST(ParseVersion, Minimal) {
  auto v = V("0");
  EXPECT_EQ(v.components, std::vector<std::uint64_t>{0});
  EXPECT_FALSE(v.letter);
  EXPECT_EQ(v.revision, 0u);
}

TEST(ParseVersion, Letter) {
  auto v = V("1.2.3a-r1");
  EXPECT_EQ(v.components, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(v.letter, 'a');
  EXPECT_EQ(v.revision, 1u);
}

TEST(ParseVersion, Rejects) {
  for (const char* bad : {"", "r1", "a1", "1..2", "1.", ".1", "1ab", "1-r", "1-rx", "1-r1-r2", "1_alpha", "1.2_rc1",
                          "1A", "1-1", " 1", "1 "}) {
    try {
      parse_version(bad);
      ADD_FAILURE() << "accepted \"" << bad << "\"";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::malformed_version) << bad;
    }
  }
}

TEST(ParseVersion, RenderRoundTrip) {
  for (const char* s : {"0", "6.1-r2", "1.2.3a-r1", "5.9-r101", "10.0.0.1z"}) {
    EXPECT_EQ(V(s).str(), s);
    EXPECT_EQ(V(V(s).str()), V(s));
  }
  // an explicit -r0 and leading zeros normalize away
  EXPECT_EQ(V("1.2-r0").str(), "1.2");
  EXPECT_EQ(V("2018.07.01").str(), "2018.7.1");
}

TEST(CompareVersions, Examples) {
  EXPECT_EQ(compare_versions(V("5.9-r101"), V("6.0-r1")), std::strong_ordering::less);
  EXPECT_EQ(compare_versions(V("6.0-r1"), V("6.0-r2")), std::strong_ordering::less);
  EXPECT_EQ(compare_versions(V("1.10"), V("1.9")), std::strong_ordering::greater);
  EXPECT_EQ(compare_versions(V("1.2.3a-r1"), V("1.2.3a-r1")), std::strong_ordering::equal);
}

TEST(CompareVersions, LetterAndPrefix) {
  EXPECT_LT(V("1.2"), V("1.2a"));
  EXPECT_LT(V("1.2a"), V("1.2b"));
  EXPECT_LT(V("1.2z"), V("1.2.0"));
  EXPECT_LT(V("1.2"), V("1.2.0"));
  EXPECT_LT(V("1.2-r9"), V("1.2a"));
  EXPECT_LT(V("1.2"), V("1.2-r1"));
}

TEST(CompareVersions, TotalOrderOnRandomTriples) {
  std::mt19937 rng(7);
  for (int i = 0; i < 10000; ++i) {
    auto a = random_version(rng), b = random_version(rng), c = random_version(rng);
    auto ab = compare_versions(a, b), ba = compare_versions(b, a);
    // antisymmetry and totality
    EXPECT_EQ(ab == std::strong_ordering::less, ba == std::strong_ordering::greater);
    EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
    // transitivity
    if (ab != std::strong_ordering::greater && compare_versions(b, c) != std::strong_ordering::greater) {
      EXPECT_NE(compare_versions(a, c), std::strong_ordering::greater) << a.str() << " " << b.str() << " " << c.str();
    }
  }
}

TEST(AtomMatches, Examples) {
  EXPECT_TRUE(atom_matches(parse_atom(">=sys-libs/ncurses-6.0-r2"), V("6.1-r2")));
  EXPECT_TRUE(atom_matches(parse_atom("~cat/pkg-1.2"), V("1.2-r5")));
  EXPECT_FALSE(atom_matches(parse_atom("~cat/pkg-1.2"), V("1.2a")));
  EXPECT_FALSE(atom_matches(parse_atom("=cat/pkg-1.2"), V("1.2-r1")));
  EXPECT_TRUE(atom_matches(parse_atom("=cat/pkg-1.2-r1"), V("1.2-r1")));
  EXPECT_TRUE(atom_matches(parse_atom("cat/pkg"), V("99")));
  EXPECT_TRUE(atom_matches(parse_atom("<=cat/pkg-2"), V("2")));
  EXPECT_FALSE(atom_matches(parse_atom("<cat/pkg-2"), V("2")));
  EXPECT_FALSE(atom_matches(parse_atom(">cat/pkg-2"), V("2")));
}

TEST(SelectBestVersion, Examples) {
  auto set = fig8_versions();
  EXPECT_EQ(select_best_version(parse_atom(">=sys-libs/ncurses-6.0-r2"), set), V("6.1-r2"));
  EXPECT_EQ(select_best_version(parse_atom("<sys-libs/ncurses-6.0"), set), V("5.9-r101"));
  EXPECT_FALSE(select_best_version(parse_atom(">sys-libs/ncurses-6.1-r2"), set));
  std::vector<Version> empty;
  EXPECT_FALSE(select_best_version(parse_atom("sys-libs/ncurses"), empty));
}

TEST(SelectBestVersion, MatchesBruteForce) {
  std::mt19937 rng(11);
  const Specifier specs[] = {Specifier::greater_equal, Specifier::greater, Specifier::approx, Specifier::equal,
                             Specifier::less_equal, Specifier::less};
  for (int i = 0; i < 2000; ++i) {
    std::vector<Version> set;
    for (int n = std::uniform_int_distribution<int>(0, 6)(rng); n > 0; --n) set.push_back(random_version(rng));
    DependencyAtom atom{specs[std::uniform_int_distribution<int>(0, 5)(rng)], PackageId("cat", "pkg"),
                        random_version(rng)};
    std::optional<Version> expected;
    for (const auto& v : set) {
      if (atom_matches(atom, v) && (!expected || *expected < v)) expected = v;
    }
    EXPECT_EQ(select_best_version(atom, set), expected) << atom.str();
  }
}

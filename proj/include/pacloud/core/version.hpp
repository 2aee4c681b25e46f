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

#include <charconv>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacloud/error.hpp"

namespace pacloud {

/// A package version: dot-separated integers, an optional single lowercase
/// letter and an optional "-rN" revision ("1.2.3a-r1"). Revision 0 means the
/// version has no revision suffix.
struct Version {
  std::vector<std::uint64_t> components{0};
  std::optional<char> letter;
  std::uint64_t revision = 0;

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (i != 0) out += '.';
      out += std::to_string(components[i]);
    }
    if (letter) out += *letter;
    if (revision > 0) {
      out += "-r";
      out += std::to_string(revision);
    }
    return out;
  }

  friend bool operator==(const Version&, const Version&) = default;
  friend std::strong_ordering operator<=>(const Version& a, const Version& b);
};

namespace detail {

inline bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

inline std::optional<std::uint64_t> parse_uint(std::string_view digits) {
  if (digits.empty()) return std::nullopt;
  for (char c : digits) {
    if (!is_digit(c)) return std::nullopt;
  }
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return value;
}

}  // namespace detail

inline Version parse_version(std::string_view text) {
  auto fail = [&](const char* why) {
    return Error(Errc::malformed_version, "\"" + std::string(text) + "\": " + why);
  };
  if (text.empty()) throw fail("empty version");
  if (!detail::is_digit(text.front())) throw fail("must start with a digit");

  Version v;
  v.components.clear();

  std::string_view rest = text;
  if (auto dash = rest.find('-'); dash != std::string_view::npos) {
    std::string_view suffix = rest.substr(dash + 1);
    rest = rest.substr(0, dash);
    if (suffix.size() < 2 || suffix.front() != 'r') throw fail("bad revision suffix");
    auto rev = detail::parse_uint(suffix.substr(1));
    if (!rev) throw fail("bad revision suffix");
    v.revision = *rev;
  }

  if (!rest.empty() && rest.back() >= 'a' && rest.back() <= 'z') {
    v.letter = rest.back();
    rest.remove_suffix(1);
    if (!rest.empty() && !detail::is_digit(rest.back())) throw fail("at most one letter allowed");
  }

  std::size_t start = 0;
  while (true) {
    auto dot = rest.find('.', start);
    auto piece = rest.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    auto number = detail::parse_uint(piece);
    if (!number) throw fail("expected a numeric component");
    v.components.push_back(*number);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return v;
}

/// Numeric componentwise comparison (a shorter prefix sorts first), then the
/// letter (absent before 'a'), then the revision.
inline std::strong_ordering compare_versions(const Version& a, const Version& b) {
  const auto n = std::min(a.components.size(), b.components.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.components[i] <=> b.components[i]; c != 0) return c;
  }
  if (auto c = a.components.size() <=> b.components.size(); c != 0) return c;
  if (a.letter != b.letter) {
    if (!a.letter) return std::strong_ordering::less;
    if (!b.letter) return std::strong_ordering::greater;
    return *a.letter <=> *b.letter;
  }
  return a.revision <=> b.revision;
}

inline std::strong_ordering operator<=>(const Version& a, const Version& b) {
  return compare_versions(a, b);
}

}  // namespace pacloud

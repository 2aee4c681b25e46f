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

#include <algorithm>
#include <compare>
#include <functional>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pacloud/core/version.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

namespace detail {

inline bool is_lower_alnum(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}
inline bool is_alnum(char c) noexcept {
  return is_lower_alnum(c) || (c >= 'A' && c <= 'Z');
}
inline bool is_category_char(char c) noexcept {
  return is_lower_alnum(c) || c == '+' || c == '_' || c == '.' || c == '-';
}
inline bool is_name_char(char c) noexcept {
  return is_alnum(c) || c == '+' || c == '_' || c == '.' || c == '-';
}
inline bool is_flag_char(char c) noexcept {
  return is_alnum(c) || c == '_' || c == '@' || c == '-';
}

template <typename Pred>
bool all_of_nonempty(std::string_view s, Pred pred) {
  return !s.empty() && std::all_of(s.begin(), s.end(), pred);
}

}  // namespace detail

inline bool is_valid_category(std::string_view s) {
  return detail::all_of_nonempty(s, detail::is_category_char);
}
inline bool is_valid_package_name(std::string_view s) {
  return detail::all_of_nonempty(s, detail::is_name_char);
}
inline bool is_valid_use_flag(std::string_view s) {
  return detail::all_of_nonempty(s, detail::is_flag_char);
}

/// "category/name", e.g. "sys-libs/ncurses".
struct PackageId {
  std::string category;
  std::string name;

  PackageId() = default;
  PackageId(std::string category_, std::string name_)
      : category(std::move(category_)), name(std::move(name_)) {
    if (!is_valid_category(category)) {
      throw Error(Errc::malformed_package_id, "invalid category \"" + category + "\"");
    }
    if (!is_valid_package_name(name)) {
      throw Error(Errc::malformed_package_id, "invalid package name \"" + name + "\"");
    }
  }

  std::string str() const { return category + "/" + name; }

  friend bool operator==(const PackageId&, const PackageId&) = default;
  friend auto operator<=>(const PackageId& a, const PackageId& b) { return a.str() <=> b.str(); }
};

inline PackageId parse_package_id(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos) {
    throw Error(Errc::malformed_package_id, "expected category/name, got \"" + std::string(text) + "\"");
  }
  return PackageId(std::string(text.substr(0, slash)), std::string(text.substr(slash + 1)));
}

/// A set of USE flags. Always kept sorted and duplicate free.
class UseFlagSet {
 public:
  UseFlagSet() = default;
  UseFlagSet(std::initializer_list<std::string_view> flags) {
    for (auto f : flags) insert(f);
  }
  template <typename Range>
  static UseFlagSet from(const Range& flags) {
    UseFlagSet out;
    for (const auto& f : flags) out.insert(f);
    return out;
  }

  void insert(std::string_view flag) {
    if (!is_valid_use_flag(flag)) {
      throw Error(Errc::malformed_use_flag, "invalid USE flag \"" + std::string(flag) + "\"");
    }
    flags_.emplace(flag);
  }
  bool contains(std::string_view flag) const { return flags_.find(std::string(flag)) != flags_.end(); }
  bool empty() const noexcept { return flags_.empty(); }
  std::size_t size() const noexcept { return flags_.size(); }
  auto begin() const { return flags_.begin(); }
  auto end() const { return flags_.end(); }

  std::string join(std::string_view sep) const {
    std::string out;
    for (const auto& f : flags_) {
      if (!out.empty()) out += sep;
      out += f;
    }
    return out;
  }
  std::string str() const { return join(","); }

  friend bool operator==(const UseFlagSet&, const UseFlagSet&) = default;

 private:
  std::set<std::string> flags_;
};

/// Splits whitespace and comma separated flag lists ("a b,c").
inline UseFlagSet parse_use_flags(std::string_view text) {
  UseFlagSet out;
  std::string current;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\n') {
      if (!current.empty()) out.insert(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.insert(current);
  return out;
}

/// Splits "category/name-version" at the hyphen that starts the version.
/// Returns nullopt when no suffix parses as a version.
inline std::optional<std::pair<PackageId, Version>> split_package_version(std::string_view text) {
  for (std::size_t pos = text.find('-'); pos != std::string_view::npos; pos = text.find('-', pos + 1)) {
    if (pos + 1 >= text.size() || !detail::is_digit(text[pos + 1])) continue;
    Version v;
    try {
      v = parse_version(text.substr(pos + 1));
    } catch (const Error&) {
      continue;
    }
    return std::pair{parse_package_id(text.substr(0, pos)), std::move(v)};
  }
  return std::nullopt;
}

/// The identity of one binary: a package at one version built with one
/// exact set of USE flags.
struct BuildKey {
  PackageId package;
  Version version;
  UseFlagSet useflags;

  /// "category/name-version[flag1,flag2]" with sorted flags.
  std::string str() const { return package.str() + "-" + version.str() + "[" + useflags.str() + "]"; }

  friend bool operator==(const BuildKey& a, const BuildKey& b) { return a.str() == b.str(); }
  friend auto operator<=>(const BuildKey& a, const BuildKey& b) { return a.str() <=> b.str(); }
};

inline BuildKey canonical_build_key(PackageId package, Version version, UseFlagSet flags) {
  return BuildKey{std::move(package), std::move(version), std::move(flags)};
}

inline BuildKey parse_build_key(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(Errc::malformed_build_key, "\"" + std::string(text) + "\": " + why);
  };
  auto open = text.rfind('[');
  if (open == std::string_view::npos || text.empty() || text.back() != ']') throw fail("missing [flags]");
  auto flags_text = text.substr(open + 1, text.size() - open - 2);
  try {
    auto split = split_package_version(text.substr(0, open));
    if (!split) throw fail("missing version");
    UseFlagSet flags;
    std::size_t start = 0;
    while (start <= flags_text.size() && !flags_text.empty()) {
      auto comma = flags_text.find(',', start);
      flags.insert(flags_text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return BuildKey{std::move(split->first), std::move(split->second), std::move(flags)};
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_build_key) throw;
    throw fail(e.what());
  }
}

}  // namespace pacloud

template <>
struct std::hash<pacloud::PackageId> {
  std::size_t operator()(const pacloud::PackageId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

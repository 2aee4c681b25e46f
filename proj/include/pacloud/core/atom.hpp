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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

enum class Specifier { any, greater_equal, greater, approx, equal, less_equal, less };

constexpr std::string_view specifier_text(Specifier s) noexcept {
  switch (s) {
    case Specifier::any: return "";
    case Specifier::greater_equal: return ">=";
    case Specifier::greater: return ">";
    case Specifier::approx: return "~";
    case Specifier::equal: return "=";
    case Specifier::less_equal: return "<=";
    case Specifier::less: return "<";
  }
  return "";
}

/// One dependency: a package, optionally constrained by a relational
/// specifier and a version. The version is present iff the specifier is not
/// `any`.
struct DependencyAtom {
  Specifier specifier = Specifier::any;
  PackageId package;
  std::optional<Version> version;

  std::string str() const {
    std::string out(specifier_text(specifier));
    out += package.str();
    if (version) {
      out += '-';
      out += version->str();
    }
    return out;
  }

  friend bool operator==(const DependencyAtom&, const DependencyAtom&) = default;
};

inline DependencyAtom parse_atom(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return Error(Errc::malformed_atom, "\"" + std::string(text) + "\": " + why);
  };
  // Longest operators first so ">=" is not read as ">".
  static constexpr std::pair<std::string_view, Specifier> kOps[] = {
      {">=", Specifier::greater_equal}, {"<=", Specifier::less_equal}, {">", Specifier::greater},
      {"<", Specifier::less},           {"~", Specifier::approx},      {"=", Specifier::equal},
  };
  DependencyAtom atom;
  std::string_view rest = text;
  for (auto [op, spec] : kOps) {
    if (rest.starts_with(op)) {
      atom.specifier = spec;
      rest.remove_prefix(op.size());
      break;
    }
  }
  try {
    if (atom.specifier == Specifier::any) {
      atom.package = parse_package_id(rest);
      return atom;
    }
    auto split = split_package_version(rest);
    if (!split) {
      // Surface the version error when the text looks like it carries one.
      if (auto dash = rest.rfind('-'); dash != std::string_view::npos) {
        (void)parse_version(rest.substr(dash + 1));
      }
      throw fail("versioned specifier without a version");
    }
    atom.package = std::move(split->first);
    atom.version = std::move(split->second);
    return atom;
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_atom) throw;
    throw fail(e.what());
  }
}

inline bool atom_matches(const DependencyAtom& atom, const Version& candidate) {
  if (atom.specifier == Specifier::any || !atom.version) return true;
  const Version& want = *atom.version;
  switch (atom.specifier) {
    case Specifier::any: return true;
    case Specifier::greater_equal: return candidate >= want;
    case Specifier::greater: return candidate > want;
    case Specifier::approx: return candidate.components == want.components && candidate.letter == want.letter;
    case Specifier::equal: return candidate == want;
    case Specifier::less_equal: return candidate <= want;
    case Specifier::less: return candidate < want;
  }
  return false;
}

template <typename Range>
std::optional<Version> select_best_version(const DependencyAtom& atom, const Range& available) {
  std::optional<Version> best;
  for (const Version& v : available) {
    if (atom_matches(atom, v) && (!best || v > *best)) best = v;
  }
  return best;
}

}  // namespace pacloud

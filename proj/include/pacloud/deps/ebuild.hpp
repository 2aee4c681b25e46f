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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/db/metadata.hpp"
#include "pacloud/deps/dep_expr.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

struct EbuildInfo {
  std::string description;
  std::string depend_raw;
  std::string rdepend_raw;
  /// Every assignment seen, after expansion.
  std::map<std::string, std::string> variables;
};

namespace detail {

/// Reads the assignment-only subset of ebuild syntax. Anything that needs a
/// shell to evaluate is rejected with the offending line number.
class EbuildReader {
 public:
  EbuildReader(std::string_view text, std::string pn, std::string pv)
      : pn_(std::move(pn)), pv_(std::move(pv)) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        lines_.emplace_back(text.substr(start));
        break;
      }
      lines_.emplace_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  EbuildInfo read() {
    while (line_ < lines_.size()) {
      std::string_view line = trim_left(lines_[line_]);
      if (line.empty() || line.front() == '#') {
        ++line_;
        continue;
      }
      reject_substitutions(lines_[line_]);
      if (line == "inherit" || line.starts_with("inherit ") || line.starts_with("inherit\t") ||
          line.starts_with("EAPI=")) {
        ++line_;
        continue;
      }
      read_statement(line);
    }
    EbuildInfo info;
    info.variables = variables_;
    info.description = lookup_assigned("DESCRIPTION");
    info.depend_raw = lookup_assigned("DEPEND");
    info.rdepend_raw = lookup_assigned("RDEPEND");
    return info;
  }

 private:
  static std::string_view trim_left(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    return s;
  }
  static bool is_name_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
  static bool is_name_char(char c) { return is_name_start(c) || (c >= '0' && c <= '9'); }

  std::size_t line_number() const { return line_ + 1; }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw Error(Errc::unsupported_ebuild_construct, line_number(), what);
  }

  void reject_substitutions(std::string_view raw) const {
    if (raw.find("$(") != std::string_view::npos) unsupported("command substitution \"$( ... )\"");
    if (raw.find('`') != std::string_view::npos) unsupported("backtick command substitution");
  }

  std::string lookup_assigned(const std::string& name) const {
    auto it = variables_.find(name);
    return it == variables_.end() ? std::string{} : it->second;
  }

  std::string lookup(const std::string& name) const {
    if (auto it = variables_.find(name); it != variables_.end()) return it->second;
    if (name == "PN") return pn_;
    if (name == "PV") return pv_;
    if (name == "P") return pn_ + "-" + pv_;
    return {};
  }

  void read_statement(std::string_view line) {
    std::size_t n = 0;
    while (n < line.size() && is_name_char(line[n])) ++n;
    bool append = false;
    if (n > 0 && is_name_start(line[0]) && n < line.size()) {
      if (line[n] == '=') {
        read_assignment(std::string(line.substr(0, n)), line.substr(n + 1), false);
        return;
      }
      if (line.substr(n).starts_with("+=")) {
        append = true;
        read_assignment(std::string(line.substr(0, n)), line.substr(n + 2), append);
        return;
      }
    }
    if (line.find("()") != std::string_view::npos || line.starts_with("function ")) {
      unsupported("function definition");
    }
    static constexpr std::string_view kControl[] = {"if", "then", "else", "elif", "fi", "case", "esac",
                                                    "for", "while", "until", "do", "done", "[[", "["};
    std::string_view first = line.substr(0, line.find_first_of(" \t;"));
    if (std::find(std::begin(kControl), std::end(kControl), first) != std::end(kControl)) {
      unsupported("shell conditional or loop \"" + std::string(first) + "\"");
    }
    unsupported("statement is not an assignment: \"" + std::string(line) + "\"");
  }

  // Expands ${NAME} and $NAME at `pos` (which points at '$').
  void expand_at(std::string_view text, std::size_t& pos, std::string& out) const {
    if (pos + 1 < text.size() && text[pos + 1] == '{') {
      auto close = text.find('}', pos + 2);
      if (close == std::string_view::npos) unsupported("unterminated \"${\"");
      std::string name(text.substr(pos + 2, close - pos - 2));
      if (name.empty() || !is_name_start(name[0]) ||
          !std::all_of(name.begin(), name.end(), [](char c) { return is_name_char(c); })) {
        unsupported("parameter expansion \"${" + name + "}\"");
      }
      out += lookup(name);
      pos = close + 1;
      return;
    }
    std::size_t end = pos + 1;
    while (end < text.size() && is_name_char(text[end])) ++end;
    if (end == pos + 1 || !is_name_start(text[pos + 1])) {
      out += '$';
      ++pos;
      return;
    }
    out += lookup(std::string(text.substr(pos + 1, end - pos - 1)));
    pos = end;
  }

  void require_trailing_blank(std::string_view rest) const {
    rest = trim_left(rest);
    if (!rest.empty() && rest.front() != '#') unsupported("unexpected text after value: \"" + std::string(rest) + "\"");
  }

  void read_assignment(std::string name, std::string_view rest, bool append) {
    std::string value;
    if (!rest.empty() && rest.front() == '"') {
      value = read_double_quoted(rest.substr(1));
    } else if (!rest.empty() && rest.front() == '\'') {
      value = read_single_quoted(rest.substr(1));
    } else {
      std::size_t pos = 0;
      while (pos < rest.size() && rest[pos] != ' ' && rest[pos] != '\t' && rest[pos] != '\r') {
        char c = rest[pos];
        if (c == '$') {
          expand_at(rest, pos, value);
        } else if (c == '"' || c == '\'' || c == '\\' || c == ';' || c == '&' || c == '|') {
          unsupported("unsupported character '" + std::string(1, c) + "' in unquoted value");
        } else {
          value += c;
          ++pos;
        }
      }
      require_trailing_blank(rest.substr(pos));
      ++line_;
    }
    if (append) value = lookup(name) + value;
    variables_[std::move(name)] = std::move(value);
  }

  std::string read_double_quoted(std::string_view text) {
    std::string out;
    while (true) {
      std::size_t pos = 0;
      while (pos < text.size()) {
        char c = text[pos];
        if (c == '"') {
          require_trailing_blank(text.substr(pos + 1));
          ++line_;
          return out;
        }
        if (c == '\\') {
          if (pos + 1 < text.size()) {
            char next = text[pos + 1];
            if (next == '"' || next == '\\' || next == '$' || next == '`') {
              out += next;
            } else {
              out += c;
              out += next;
            }
            pos += 2;
          } else {
            ++pos;  // line continuation
          }
          continue;
        }
        if (c == '$') {
          expand_at(text, pos, out);
          continue;
        }
        out += c;
        ++pos;
      }
      bool continued = !text.empty() && text.back() == '\\';
      ++line_;
      if (line_ >= lines_.size()) {
        --line_;
        unsupported("unterminated double-quoted value");
      }
      if (!continued) out += '\n';
      text = lines_[line_];
      reject_substitutions(text);
    }
  }

  std::string read_single_quoted(std::string_view text) {
    std::string out;
    while (true) {
      if (auto close = text.find('\''); close != std::string_view::npos) {
        out += text.substr(0, close);
        require_trailing_blank(text.substr(close + 1));
        ++line_;
        return out;
      }
      out += text;
      out += '\n';
      ++line_;
      if (line_ >= lines_.size()) {
        --line_;
        unsupported("unterminated single-quoted value");
      }
      text = lines_[line_];
    }
  }

  std::vector<std::string> lines_;
  std::size_t line_ = 0;
  std::string pn_;
  std::string pv_;
  std::map<std::string, std::string> variables_;
};

}  // namespace detail

/// Reads DESCRIPTION, DEPEND and RDEPEND out of an ebuild restricted to
/// variable assignments. `pn` and `pv` provide ${PN}, ${PV} and ${P}.
inline EbuildInfo parse_ebuild(std::string_view text, const std::string& pn, const std::string& pv) {
  if (pn.empty() || pv.empty()) throw Error(Errc::invalid_argument, "package name and version must be non-empty");
  return detail::EbuildReader(text, pn, pv).read();
}

/// Builds the metadata document for one package from its parsed ebuilds.
/// The "dependencies" of each version are the top-level elements of its
/// RDEPEND, each rendered canonically.
inline PackageMetadata metadata_from_ebuilds(const PackageId& package,
                                             const std::vector<std::pair<Version, EbuildInfo>>& entries) {
  if (entries.empty()) throw Error(Errc::empty_input, "no ebuilds for " + package.str());
  PackageMetadata meta;
  meta.name = package;
  const Version* highest = nullptr;
  for (const auto& [version, info] : entries) {
    VersionEntry entry;
    const auto rdepend = parse_dep_string(info.rdepend_raw);
    for (const auto& element : rdepend.group().children) {
      entry.dependencies.push_back(detail::render_node(element, /*root=*/false));
    }
    if (!meta.versions.emplace(version.str(), std::move(entry)).second) {
      throw Error(Errc::duplicate_version, package.str() + "-" + version.str());
    }
    if (!highest || version > *highest) {
      highest = &version;
      meta.description = info.description;
    }
  }
  return meta;
}

}  // namespace pacloud

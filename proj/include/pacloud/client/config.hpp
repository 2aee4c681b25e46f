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

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacloud/core/package.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

inline constexpr const char* kDefaultConfigPath = "/etc/pacloud/pacloud.conf";
inline constexpr const char* kConfigEnvVar = "PACLOUD_CONFIG";

struct Config {
  // [local]
  std::filesystem::path db_path = "/var/lib/pacloud/db/";
  std::filesystem::path log_path = "/var/lib/pacloud/pacloud.log";
  std::filesystem::path install_root = "/";
  // [server]
  std::string api_url;
  std::string store_url;
  // [user]
  UseFlagSet use_flags;
  std::string arch;
  std::string cflags;
  // [client]
  Seconds poll_interval = 10;
  Seconds timeout = 7200;

  /// Unknown sections and keys seen while loading.
  std::vector<std::string> warnings;

  const std::string& require_api_url() const {
    if (api_url.empty()) throw Error(Errc::missing_server_url, "[server] api_url is not set");
    return api_url;
  }
  const std::string& require_store_url() const {
    if (store_url.empty()) throw Error(Errc::missing_server_url, "[server] store_url is not set");
    return store_url;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::string unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

inline Seconds parse_seconds(const std::string& value, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(Errc::malformed_config_line, line, key + " expects a number of seconds, got \"" + value + "\"");
  }
}

}  // namespace detail

/// Reads the INI text of a configuration file. Sections are [local],
/// [server], [user] and [client]; unknown keys only produce a warning.
inline Config parse_config(std::string_view text) {
  Config cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(Errc::malformed_config_line, line_no, "unterminated section header");
      section = std::string(detail::trim(line.substr(1, line.size() - 2)));
      if (section != "local" && section != "server" && section != "user" && section != "client") {
        cfg.warnings.push_back("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::malformed_config_line, line_no, "expected key = value, got \"" + std::string(line) + "\"");
    }
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value = detail::unquote(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw Error(Errc::malformed_config_line, line_no, "empty key");
    if (section.empty()) throw Error(Errc::malformed_config_line, line_no, "key \"" + key + "\" outside any section");

    const std::string full = section + "." + key;
    if (full == "local.db_path") cfg.db_path = value;
    else if (full == "local.log_path") cfg.log_path = value;
    else if (full == "local.install_root") cfg.install_root = value;
    else if (full == "server.api_url") cfg.api_url = value;
    else if (full == "server.store_url") cfg.store_url = value;
    else if (full == "user.use_flags") {
      try {
        cfg.use_flags = parse_use_flags(value);
      } catch (const Error& e) {
        throw Error(Errc::malformed_config_line, line_no, e.what());
      }
    } else if (full == "user.arch") cfg.arch = value;
    else if (full == "user.cflags") cfg.cflags = value;
    else if (full == "client.poll_interval") cfg.poll_interval = detail::parse_seconds(value, line_no, full);
    else if (full == "client.timeout") cfg.timeout = detail::parse_seconds(value, line_no, full);
    else cfg.warnings.push_back("line " + std::to_string(line_no) + ": unknown key " + full);
  }

  if (!(cfg.poll_interval > 0)) throw Error(Errc::invalid_config, "client.poll_interval must be positive");
  if (cfg.timeout < cfg.poll_interval) throw Error(Errc::invalid_config, "client.timeout must be >= poll_interval");
  if (!cfg.db_path.is_absolute()) throw Error(Errc::invalid_config, "local.db_path must be absolute");
  if (!cfg.install_root.is_absolute()) throw Error(Errc::invalid_config, "local.install_root must be absolute");
  return cfg;
}

/// Missing file: all defaults. The file is only ever read.
inline Config load_config(const std::filesystem::path& path) {
  auto text = fsutil::read_file(path);
  if (!text) return parse_config("");
  return parse_config(*text);
}

/// --config wins, then $PACLOUD_CONFIG, then the default location.
inline std::filesystem::path config_path(const std::optional<std::string>& from_cli) {
  if (from_cli) return *from_cli;
  if (const char* env = std::getenv(kConfigEnvVar); env && *env) return env;
  return kDefaultConfigPath;
}

}  // namespace pacloud

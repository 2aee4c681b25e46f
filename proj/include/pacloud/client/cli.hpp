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

#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

enum class Verb { search, install, remove, upgrade, update, help };

struct Command {
  Verb verb = Verb::help;
  std::vector<std::string> arguments;
  std::optional<std::string> config_path;

  friend bool operator==(const Command&, const Command&) = default;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline std::string usage_text() {
  return "usage: pacloud [--config PATH] <operation>\n"
         "operations:\n"
         "  -s, --search KEY        search the local database\n"
         "  -i, --install PKG...    install packages and their runtime dependencies\n"
         "  -r, --remove PKG...     remove packages and dependencies nothing else needs\n"
         "  -U, --upgrade [PKG...]  upgrade explicitly installed (or the named) packages\n"
         "  -u, --update            update the local database from the store\n"
         "  -h, --help              show this help\n";
}

/// Parses the arguments after the program name. Exactly one operation must
/// be given; anything else is a UsageError (exit code 2).
inline Command cli_parse(const std::vector<std::string>& args) {
  CLI::App app{"pacloud", "pacloud"};
  app.set_help_flag();
  app.allow_extras(false);

  std::string search;
  std::vector<std::string> install, remove, upgrade;
  std::string config;
  auto* o_search = app.add_option("-s,--search", search);
  auto* o_install = app.add_option("-i,--install", install)->expected(1, CLI::detail::expected_max_vector_size);
  auto* o_remove = app.add_option("-r,--remove", remove)->expected(1, CLI::detail::expected_max_vector_size);
  auto* o_upgrade = app.add_option("-U,--upgrade", upgrade)->expected(0, CLI::detail::expected_max_vector_size);
  auto* o_update = app.add_flag("-u,--update");
  auto* o_help = app.add_flag("-h,--help");
  auto* o_config = app.add_option("--config", config);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::usage_error, std::string(e.what()) + "\n" + usage_text());
  }

  Command cmd;
  int verbs = 0;
  auto take = [&](CLI::Option* opt, Verb verb, std::vector<std::string> arguments) {
    if (opt->count() == 0) return;
    ++verbs;
    cmd.verb = verb;
    cmd.arguments = std::move(arguments);
  };
  take(o_search, Verb::search, {search});
  take(o_install, Verb::install, install);
  take(o_remove, Verb::remove, remove);
  // a bare -U comes back from CLI11 as a single empty value
  std::erase(upgrade, std::string{});
  take(o_upgrade, Verb::upgrade, upgrade);
  take(o_update, Verb::update, {});
  take(o_help, Verb::help, {});
  if (verbs == 0) throw Error(Errc::usage_error, "no operation given\n" + usage_text());
  if (verbs > 1) throw Error(Errc::usage_error, "only one operation may be given\n" + usage_text());
  if (o_config->count() > 0) cmd.config_path = config;
  return cmd;
}

}  // namespace pacloud

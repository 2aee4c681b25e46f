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

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <string>

#include "pacloud/db/store.hpp"
#include "pacloud/deps/portage_tree.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/emerge.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/farm.hpp"
#include "pacloud/farm/service.hpp"

namespace {

pacloud::FarmService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pacloud;
  CLI::App app{"pacloud build farm"};
  app.require_subcommand(1);

  std::string root = "farm";
  std::string repo = "store";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t workers = 4;
  double build_seconds = 1;
  auto* serve = app.add_subcommand("serve", "Serve the package API, the store and the workers");
  serve->add_option("--root", root, "Farm state directory")->capture_default_str();
  serve->add_option("--repo", repo, "Directory holding manifest.txt and category documents")->capture_default_str();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--workers", workers)->capture_default_str()->check(CLI::PositiveNumber);
  serve->add_option("--build-seconds", build_seconds, "Duration of each simulated build")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  auto* dead = app.add_subcommand("dead-letters", "List dead-lettered build requests");
  dead->add_option("--root", root, "Farm state directory")->capture_default_str();

  std::string tree;
  std::string out;
  auto* translate = app.add_subcommand("translate", "Turn an ebuild tree into store documents");
  translate->add_option("tree", tree, "Portage tree")->required();
  translate->add_option("out", out, "Output store directory")->required();

  std::string key;
  auto* emerge = app.add_subcommand("emerge-cmd", "Print the build command for a key");
  emerge->add_option("key", key, "cat/name-version[flag,...]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      BuildFarm farm(QueueConfig{}, root);
      DirectoryStore repository(repo);
      SimulatedExecutorFactory executors(BuildSpec{build_seconds, std::nullopt});
      SystemClock clock;
      WorkerPool pool(farm, executors, clock, workers);
      FarmService service(farm, repository, clock);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "serving on http://" << host << ":" << port << " (api /package, store /store/)\n";
      service.run(host, port);
      g_service = nullptr;
      return 0;
    }
    if (*dead) {
      BuildFarm farm(QueueConfig{}, root);
      for (const auto& m : farm.queue().dead_letters()) {
        std::cout << m.id << "\t" << m.receive_count << "\t" << m.body << "\n";
      }
      return 0;
    }
    if (*translate) {
      auto report = translate_portage_tree(tree, out);
      std::cout << report.categories << " categories, " << report.packages << " packages, " << report.ebuilds
                << " ebuilds\n";
      for (const auto& [path, reason] : report.skipped) std::cerr << "skipped " << path << ": " << reason << "\n";
      return report.skipped.empty() ? 0 : 1;
    }
    if (*emerge) {
      std::cout << generate_emerge_commands(parse_build_key(key)) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "pacloud-farm: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

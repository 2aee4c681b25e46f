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

#include <chrono>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "pacloud/client/cli.hpp"
#include "pacloud/client/commands.hpp"
#include "pacloud/client/config.hpp"
#include "pacloud/client/http.hpp"
#include "pacloud/farm/clock.hpp"

int main(int argc, char** argv) {
  using namespace pacloud;
  std::vector<std::string> args(argv + 1, argv + argc);
  Command cmd;
  try {
    cmd = cli_parse(args);
  } catch (const Error& e) {
    std::cerr << "pacloud: " << e.what();
    return kExitUsage;
  }
  if (cmd.verb == Verb::help) {
    std::cout << usage_text();
    return kExitOk;
  }

  ClientContext ctx;
  std::unique_ptr<FarmTransport> transport;
  std::unique_ptr<RemoteStore> store;
  SystemClock clock;
  try {
    ctx.config = load_config(config_path(cmd.config_path));
    for (const auto& w : ctx.config.warnings) std::cerr << "pacloud: " << w << "\n";
    if (!ctx.config.api_url.empty()) transport = std::make_unique<HttpTransport>(ctx.config.api_url);
    if (!ctx.config.store_url.empty()) store = open_store(ctx.config.store_url);
  } catch (const Error& e) {
    std::cerr << "pacloud: " << e.what() << "\n";
    return kExitFailure;
  }
  ctx.farm = transport.get();
  ctx.store = store.get();
  ctx.clock = &clock;
  ctx.sleep = [](Seconds s) { std::this_thread::sleep_for(std::chrono::duration<double>(s)); };
  return run_command(ctx, cmd);
}

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

#include <iomanip>
#include <iostream>
#include <string>

#include "pacloud/bench/cost.hpp"
#include "pacloud/bench/durations.hpp"
#include "pacloud/bench/makespan.hpp"
#include "pacloud/util/fs.hpp"

int main(int argc, char** argv) {
  using namespace pacloud;
  using namespace pacloud::bench;
  CLI::App app{"pacloud simulation benchmarks"};

  std::size_t workers = 16;
  std::size_t count = 16;
  std::string jobs_file;
  std::string scenario;
  std::string report_path;
  std::string data = std::string(kDefaultDataDir) + "/benchmarks.json";
  double packages = 20000;
  double package_mb = 2;
  double price = 1.0;

  app.add_option("--workers", workers, "Number of workers")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs_file, "JSON list of {key, duration|time}");
  app.add_option("--scenario", scenario, "parallel, speedup or storage")
      ->check(CLI::IsMember({"parallel", "speedup", "storage"}));
  app.add_option("--count", count, "Jobs in the parallel scenario (1-17)")->capture_default_str();
  app.add_option("--report", report_path, "Write the JSON report here");
  app.add_option("--data", data, "Benchmark table")->capture_default_str();
  app.add_option("--packages", packages, "storage: number of packages")->capture_default_str();
  app.add_option("--package-mb", package_mb, "storage: average package size")->capture_default_str();
  app.add_option("--price", price, "storage: $ per GB-month")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    if (scenario == "speedup") {
      auto table = load_device_table(data);
      for (const auto* pkg : {"sys-devel/gcc-6.4.0-r1", "sys-libs/ncurses-6.1-r2"}) {
        std::cout << device_comparison(table, pkg, "Raspberry Pi 2", "c5.9xlarge").report() << "\n";
      }
      return 0;
    }
    if (scenario == "storage") {
      std::cout << std::fixed << std::setprecision(2) << estimate_storage_cost(packages, package_mb, price)
                << " $/month\n";
      return 0;
    }
    std::vector<JobSpec> jobs;
    if (!jobs_file.empty()) {
      auto text = fsutil::read_file(jobs_file);
      if (!text) throw Error(Errc::io_error, "cannot read " + jobs_file);
      jobs = parse_jobs(*text);
    } else if (scenario == "parallel" || scenario.empty()) {
      jobs = parallel_build_jobs(load_device_table(data), count);
    }
    auto report = run_makespan(workers, jobs);
    std::cout << report.table();
    if (!report_path.empty()) fsutil::write_file_atomic(report_path, report.to_json().dump(2) + "\n");
  } catch (const Error& e) {
    std::cerr << "pacloud-bench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

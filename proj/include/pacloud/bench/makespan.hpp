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
#include <iomanip>
#include "json.hpp"
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pacloud/bench/durations.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/simulation.hpp"

namespace pacloud::bench {

struct JobSpec {
  BuildKey key;
  Seconds duration = 0;
};

struct JobTiming {
  std::string key;
  Seconds duration = 0;
  Seconds start = 0;
  Seconds end = 0;
};

struct MakespanReport {
  std::size_t workers = 0;
  Seconds total = 0;
  std::vector<JobTiming> jobs;  // in submission order

  /// Busy share of the workers' time over [0, total].
  double utilization() const {
    if (total <= 0 || workers == 0) return 0;
    Seconds busy = 0;
    for (const auto& j : jobs) busy += j.end - j.start;
    return busy / (total * static_cast<double>(workers));
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json doc;
    doc["workers"] = workers;
    doc["total_seconds"] = total;
    doc["utilization"] = utilization();
    auto& out = doc["jobs"] = nlohmann::ordered_json::array();
    for (const auto& j : jobs) {
      out.push_back({{"key", j.key}, {"duration", j.duration}, {"start", j.start}, {"end", j.end}});
    }
    return doc;
  }

  std::string table() const {
    std::size_t width = 3;
    for (const auto& j : jobs) width = std::max(width, j.key.size());
    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << std::left << std::setw(static_cast<int>(width)) << "key" << std::right << std::setw(12) << "duration"
        << std::setw(12) << "start" << std::setw(12) << "end" << "\n";
    for (const auto& j : jobs) {
      out << std::left << std::setw(static_cast<int>(width)) << j.key << std::right << std::setw(12) << j.duration
          << std::setw(12) << j.start << std::setw(12) << j.end << "\n";
    }
    out << "workers " << workers << ", total " << total << " s, utilization " << utilization() * 100 << "%\n";
    return out.str();
  }
};

/// Submits every job to a fresh farm at t=0 and lets `num_workers` workers
/// drain the queue on a virtual clock.
inline MakespanReport run_makespan(std::size_t num_workers, const std::vector<JobSpec>& jobs) {
  if (num_workers == 0) throw Error(Errc::invalid_argument, "need at least one worker");
  if (jobs.empty()) throw Error(Errc::invalid_argument, "need at least one job");

  SimulatedExecutorFactory executors;
  std::set<std::string> seen;
  Seconds sum = 0;
  for (const auto& j : jobs) {
    if (!(j.duration > 0)) throw Error(Errc::invalid_argument, j.key.str() + ": duration must be positive");
    if (!seen.insert(j.key.str()).second) throw Error(Errc::invalid_argument, "duplicate job " + j.key.str());
    executors.set(j.key.str(), BuildSpec{j.duration, std::nullopt});
    sum += j.duration;
  }

  FarmSimulation sim(executors);
  sim.add_workers(num_workers);
  for (const auto& j : jobs) sim.request(j.key);
  if (!sim.run_until(sum + 3600, [&] { return sim.settled(); })) {
    throw Error(Errc::timeout_error, "simulation did not settle");
  }

  MakespanReport report;
  report.workers = num_workers;
  for (const auto& j : jobs) {
    auto record = sim.farm().records().get(j.key.str());
    if (!record || record->status != BuildStatus::built) {
      throw Error(Errc::build_failed, j.key.str() + " did not build");
    }
    report.jobs.push_back(JobTiming{j.key.str(), j.duration, record->started_at.value_or(record->created_at),
                                    record->completed_at.value_or(0)});
    report.total = std::max(report.total, report.jobs.back().end);
  }
  return report;
}

/// [{"key": "cat/name-1.0[flags]", "duration": 12.5}, {"key": ..., "time": "2:48.92"}]
inline std::vector<JobSpec> parse_jobs(std::string_view text) {
  std::vector<JobSpec> jobs;
  try {
    for (const auto& j : nlohmann::json::parse(text)) {
      JobSpec spec{parse_build_key(j.at("key").get<std::string>()), 0};
      spec.duration = j.contains("time") ? parse_duration(j.at("time").get<std::string>()) : j.at("duration").get<double>();
      jobs.push_back(std::move(spec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_document, std::string("jobs file: ") + e.what());
  }
  return jobs;
}

/// gcc-6.4.0-r1 followed by ncurses-6.1-r2 builds under every subset of
/// four USE flags, all with c5.2xlarge durations. 16 jobs by default; up
/// to 17.
inline std::vector<JobSpec> parallel_build_jobs(const DeviceTimeTable& table, std::size_t count = 16) {
  if (count == 0 || count > 17) throw Error(Errc::invalid_argument, "scenario has between 1 and 17 jobs");
  constexpr const char* machine = "c5.2xlarge";
  std::vector<JobSpec> jobs;
  jobs.push_back(JobSpec{parse_build_key("sys-devel/gcc-6.4.0-r1[]"), table.duration("sys-devel/gcc-6.4.0-r1", machine)});
  const Seconds ncurses = table.duration("sys-libs/ncurses-6.1-r2", machine);
  const std::vector<std::string> flags{"cxx", "gpm", "threads", "unicode"};
  for (unsigned mask = 0; jobs.size() < count; ++mask) {
    BuildKey key = parse_build_key("sys-libs/ncurses-6.1-r2[]");
    for (std::size_t b = 0; b < flags.size(); ++b) {
      if (mask & (1u << b)) key.useflags.insert(flags[b]);
    }
    jobs.push_back(JobSpec{std::move(key), ncurses});
  }
  return jobs;
}

}  // namespace pacloud::bench

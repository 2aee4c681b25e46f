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

#include <gtest/gtest.h>

#include "pacloud/bench/cost.hpp"
#include "pacloud/bench/durations.hpp"
#include "pacloud/bench/makespan.hpp"

using namespace pacloud;
using namespace pacloud::bench;

namespace {

const DeviceTimeTable& table() {
  static const DeviceTimeTable t = load_device_table();
  return t;
}

JobSpec job(const std::string& key, Seconds d) { return JobSpec{parse_build_key(key), d}; }

}  // namespace

TEST(Duration, Parse) {
  EXPECT_DOUBLE_EQ(parse_duration("2:48.92"), 168.92);
  EXPECT_DOUBLE_EQ(parse_duration("0:33:30.77"), 2010.77);
  EXPECT_DOUBLE_EQ(parse_duration("8:12:51"), 29571);
  EXPECT_DOUBLE_EQ(parse_duration("0:00"), 0);
  for (const char* bad : {"", "12", "1:60", "1:2:60", "1.5:00", "1:", ":10", "a:10", "1:2:3:4", "1:10.", "1:1x"}) {
    EXPECT_THROW(parse_duration(bad), Error) << bad;
  }
}

TEST(DeviceTable, EmbeddedData) {
  EXPECT_EQ(table().packages().size(), 2u);
  for (const auto& [package, rows] : table().packages()) EXPECT_EQ(rows.size(), 10u) << package;
  EXPECT_DOUBLE_EQ(table().duration("sys-devel/gcc-6.4.0-r1", "c5.2xlarge"), 2010.77);
  EXPECT_DOUBLE_EQ(table().duration("gcc", "Raspberry Pi 2"), 29571);
  EXPECT_DOUBLE_EQ(table().duration("sys-libs/ncurses", "c5.2xlarge"), 168.92);
  EXPECT_EQ(table().row("ncurses", "c5.9xlarge").cores, 36);
}

TEST(DeviceTable, Lookups) {
  try {
    table().duration("gcc", "Cray-1");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_machine);
  }
  try {
    table().duration("clang", "c5.large");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unknown_package);
  }
  EXPECT_THROW(table().resolve_package("gc"), Error);
}

TEST(DeviceTable, RejectsInconsistentRows) {
  const char* bad = R"({"packages":{"a/b-1":[{"machine":"m","cores":1,"clock_ghz":1,"time":"1:00","seconds":61}]}})";
  EXPECT_THROW(parse_device_table(bad), Error);
  const char* zero = R"({"packages":{"a/b-1":[{"machine":"m","cores":1,"clock_ghz":1,"time":"0:00","seconds":0}]}})";
  EXPECT_THROW(parse_device_table(zero), Error);
  EXPECT_THROW(parse_device_table("{}"), Error);
  EXPECT_THROW(load_device_table("/nonexistent/benchmarks.json"), Error);
}

TEST(DeviceComparison, CloudAgainstThePi) {
  auto gcc = device_comparison(table(), "gcc", "Raspberry Pi 2", "c5.2xlarge");
  EXPECT_NEAR(gcc.percent(), 6.80, 0.01);
  auto nc = device_comparison(table(), "ncurses", "Raspberry Pi 2", "c5.2xlarge");
  EXPECT_NEAR(nc.percent(), 10.82, 0.01);
  EXPECT_EQ(gcc.report().rfind("sys-devel/gcc-6.4.0-r1: c5.2xlarge takes 2010.77 s", 0), 0u) << gcc.report();
}

TEST(DeviceComparison, LargestInstance) {
  EXPECT_NEAR(device_comparison(table(), "gcc", "Raspberry Pi 2", "c5.9xlarge").percent(), 5.05, 0.1);
  EXPECT_NEAR(device_comparison(table(), "ncurses", "Raspberry Pi 2", "c5.9xlarge").percent(), 7.87, 0.1);
}

TEST(Makespan, SmallSchedules) {
  auto r = run_makespan(2, {job("a/x-1[]", 3), job("a/y-1[]", 3), job("a/z-1[]", 3)});
  EXPECT_DOUBLE_EQ(r.total, 6);
  EXPECT_DOUBLE_EQ(r.jobs[2].start, 3);
  EXPECT_DOUBLE_EQ(r.utilization(), 0.75);

  auto one = run_makespan(1, {job("a/x-1[]", 2.5), job("a/y-1[]", 4)});
  EXPECT_DOUBLE_EQ(one.total, 6.5);
  EXPECT_DOUBLE_EQ(one.utilization(), 1.0);

  auto wide = run_makespan(8, {job("a/x-1[]", 2.5), job("a/y-1[]", 4)});
  EXPECT_DOUBLE_EQ(wide.total, 4);
}

TEST(Makespan, RejectsBadInput) {
  EXPECT_THROW(run_makespan(0, {job("a/x-1[]", 1)}), Error);
  EXPECT_THROW(run_makespan(1, {}), Error);
  EXPECT_THROW(run_makespan(1, {job("a/x-1[]", 1), job("a/x-1[]", 2)}), Error);
  EXPECT_THROW(run_makespan(1, {job("a/x-1[]", 0)}), Error);
}

TEST(Makespan, ParallelCloudBuilds) {
  auto jobs = parallel_build_jobs(table());
  ASSERT_EQ(jobs.size(), 16u);
  EXPECT_EQ(jobs[0].key.str(), "sys-devel/gcc-6.4.0-r1[]");
  EXPECT_EQ(jobs[1].key.str(), "sys-libs/ncurses-6.1-r2[]");
  EXPECT_EQ(jobs[15].key.str(), "sys-libs/ncurses-6.1-r2[gpm,threads,unicode]");
  auto r = run_makespan(16, jobs);
  EXPECT_NEAR(r.total, 2010.77, 1e-9);
  for (const auto& j : r.jobs) EXPECT_EQ(j.start, 0) << j.key;

  auto extra = run_makespan(16, parallel_build_jobs(table(), 17));
  EXPECT_NEAR(extra.total, 2010.77, 1e-9);
  EXPECT_NEAR(extra.jobs[16].start, 168.92, 1e-9);

  EXPECT_NEAR(run_makespan(1, jobs).total, 2010.77 + 15 * 168.92, 1e-6);
  EXPECT_THROW(parallel_build_jobs(table(), 18), Error);
}

TEST(Makespan, ReportFormats) {
  auto r = run_makespan(1, {job("a/x-1[]", 2)});
  auto doc = r.to_json();
  EXPECT_EQ(doc["total_seconds"], 2.0);
  EXPECT_EQ(doc["jobs"][0]["key"], "a/x-1[]");
  EXPECT_NE(r.table().find("workers 1, total 2.00 s, utilization 100.00%"), std::string::npos) << r.table();
}

TEST(Makespan, ParseJobs) {
  auto jobs = parse_jobs(R"([{"key":"a/b-1[x]","duration":4},{"key":"a/c-2[]","time":"1:00.5"}])");
  ASSERT_EQ(jobs.size(), 2u);
  EXPECT_DOUBLE_EQ(jobs[1].duration, 60.5);
  EXPECT_THROW(parse_jobs(R"([{"key":"a/b-1[]"}])"), Error);
  EXPECT_THROW(parse_jobs("nope"), Error);
}

TEST(StorageCost, Estimate) {
  EXPECT_NEAR(estimate_storage_cost(20000, 2, 1.0), 39.06, 0.01);
  EXPECT_DOUBLE_EQ(estimate_storage_cost(0, 2, 1.0), 0);
  EXPECT_DOUBLE_EQ(estimate_storage_cost(40000, 2, 1.0), 2 * estimate_storage_cost(20000, 2, 1.0));
  EXPECT_DOUBLE_EQ(estimate_storage_cost(20000, 6, 1.0), 3 * estimate_storage_cost(20000, 2, 1.0));
  EXPECT_DOUBLE_EQ(estimate_storage_cost(20000, 2, 0.5), 0.5 * estimate_storage_cost(20000, 2, 1.0));
  EXPECT_THROW(estimate_storage_cost(-1, 2, 1), Error);
}

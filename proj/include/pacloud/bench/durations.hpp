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

#include <cmath>
#include <filesystem>
#include <map>
#include "json.hpp"
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pacloud/error.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud::bench {

/// "HH:MM:SS.ss" or "M:SS.ss" to seconds.
inline Seconds parse_duration(std::string_view text) {
  auto fail = [&] { return Error(Errc::invalid_argument, "malformed duration \"" + std::string(text) + "\""); };
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    fields.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (fields.size() < 2 || fields.size() > 3) throw fail();

  Seconds total = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto f = fields[i];
    const bool last = i + 1 == fields.size();
    if (f.empty()) throw fail();
    std::size_t digits = 0;
    while (digits < f.size() && f[digits] >= '0' && f[digits] <= '9') ++digits;
    if (digits == 0) throw fail();
    if (digits != f.size()) {
      // only the seconds field may carry a fraction
      if (!last || f[digits] != '.' || digits + 1 == f.size()) throw fail();
      for (auto c : f.substr(digits + 1)) {
        if (c < '0' || c > '9') throw fail();
      }
    }
    double value = std::stod(std::string(f));
    if (i > 0 && value >= 60) throw fail();
    total = total * 60 + value;
  }
  return total;
}

struct DeviceTime {
  std::string machine;
  int cores = 0;
  double clock_ghz = 0;
  std::string time;
  Seconds seconds = 0;
};

/// Benchmark durations per package ("category/name-version") and machine.
class DeviceTimeTable {
 public:
  void add(const std::string& package, DeviceTime row) {
    if (!(row.seconds > 0)) throw Error(Errc::invalid_argument, package + " on " + row.machine + ": duration must be positive");
    rows_[package].push_back(std::move(row));
  }

  const std::map<std::string, std::vector<DeviceTime>>& packages() const { return rows_; }

  /// Accepts the full key or any unambiguous prefix ending before a '-'
  /// ("sys-devel/gcc", "gcc").
  const std::string& resolve_package(std::string_view package) const {
    if (auto it = rows_.find(std::string(package)); it != rows_.end()) return it->first;
    const std::string* found = nullptr;
    for (const auto& [key, _] : rows_) {
      auto slash = key.find('/');
      std::string_view bare = std::string_view(key).substr(slash + 1);
      bool hit = (key.starts_with(package) && key.size() > package.size() && key[package.size()] == '-') ||
                 (bare.starts_with(package) && bare.size() > package.size() && bare[package.size()] == '-');
      if (!hit) continue;
      if (found) throw Error(Errc::unknown_package, "ambiguous package \"" + std::string(package) + "\"");
      found = &key;
    }
    if (!found) throw Error(Errc::unknown_package, std::string(package));
    return *found;
  }

  const DeviceTime& row(std::string_view package, std::string_view machine) const {
    const auto& key = resolve_package(package);
    for (const auto& r : rows_.at(key)) {
      if (r.machine == machine) return r;
    }
    throw Error(Errc::unknown_machine, std::string(machine) + " has no time for " + key);
  }

  Seconds duration(std::string_view package, std::string_view machine) const { return row(package, machine).seconds; }

 private:
  std::map<std::string, std::vector<DeviceTime>> rows_;
};

/// Rows whose "seconds" disagrees with "time" are rejected.
inline DeviceTimeTable parse_device_table(std::string_view text) {
  DeviceTimeTable table;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& [package, rows] : doc.at("packages").items()) {
      for (const auto& r : rows) {
        DeviceTime row{r.at("machine").get<std::string>(), r.at("cores").get<int>(), r.at("clock_ghz").get<double>(),
                       r.at("time").get<std::string>(), r.at("seconds").get<double>()};
        if (std::abs(parse_duration(row.time) - row.seconds) > 1e-6) {
          throw Error(Errc::malformed_document, package + " on " + row.machine + ": " + row.time + " is not " +
                                                    std::to_string(row.seconds) + " s");
        }
        table.add(package, std::move(row));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_document, std::string("benchmark table: ") + e.what());
  }
  return table;
}

#ifdef PACLOUD_DATA_DIR
inline constexpr const char* kDefaultDataDir = PACLOUD_DATA_DIR;
#else
inline constexpr const char* kDefaultDataDir = "data";
#endif

inline DeviceTimeTable load_device_table(const std::filesystem::path& path = std::filesystem::path(kDefaultDataDir) /
                                                                          "benchmarks.json") {
  auto text = fsutil::read_file(path);
  if (!text) throw Error(Errc::io_error, "cannot read " + path.string());
  return parse_device_table(*text);
}

struct DeviceComparison {
  std::string package;
  std::string baseline;
  std::string target;
  Seconds baseline_seconds = 0;
  Seconds target_seconds = 0;
  double ratio = 0;

  double percent() const { return ratio * 100; }

  std::string report() const {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << package << ": " << target << " takes " << target_seconds << " s, " << percent() << "% of " << baseline
        << " (" << baseline_seconds << " s)";
    return out.str();
  }
};

inline DeviceComparison device_comparison(const DeviceTimeTable& table, std::string_view package,
                                          std::string_view baseline, std::string_view target) {
  DeviceComparison c;
  c.package = table.resolve_package(package);
  c.baseline = baseline;
  c.target = target;
  c.baseline_seconds = table.duration(c.package, baseline);
  c.target_seconds = table.duration(c.package, target);
  c.ratio = c.target_seconds / c.baseline_seconds;
  return c;
}

}  // namespace pacloud::bench

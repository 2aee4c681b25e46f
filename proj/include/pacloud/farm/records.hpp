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

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

enum class BuildStatus { pending, built, failed };

constexpr const char* build_status_name(BuildStatus s) {
  switch (s) {
    case BuildStatus::pending: return "pending";
    case BuildStatus::built: return "built";
    case BuildStatus::failed: return "failed";
  }
  return "pending";
}

/// Outcome of one BuildKey. Terminal states never change once written.
struct BuildRecord {
  std::string key;  // canonical BuildKey string
  BuildStatus status = BuildStatus::pending;
  std::optional<std::string> artifact_url;
  std::optional<std::string> error_message;
  Seconds created_at = 0;
  /// Start of the build whose outcome was recorded.
  std::optional<Seconds> started_at;
  std::optional<Seconds> completed_at;

  bool terminal() const { return status != BuildStatus::pending; }

  friend bool operator==(const BuildRecord&, const BuildRecord&) = default;
};

struct RecordTransition {
  std::string key;
  BuildStatus status;
  Seconds at;
};

/// Build metadata table. Terminal writes are first-write-wins.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path state_file = {}) : state_file_(std::move(state_file)) { load(); }

  std::optional<BuildRecord> get(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = records_.find(key);
    if (it == records_.end()) return std::nullopt;
    return it->second;
  }

  /// Returns the existing record, or creates a pending one. The flag is true
  /// iff this call created it.
  std::pair<BuildRecord, bool> get_or_create_pending(const std::string& key, Seconds now) {
    std::lock_guard lock(mu_);
    auto [it, created] = records_.try_emplace(key, BuildRecord{key, BuildStatus::pending, {}, {}, now, {}, {}});
    if (created) save();
    return {it->second, created};
  }

  bool finalize_built(const std::string& key, const std::string& url, std::optional<Seconds> started_at, Seconds now) {
    return finalize(key, BuildStatus::built, url, std::nullopt, started_at, now);
  }

  bool finalize_failed(const std::string& key, const std::string& error, std::optional<Seconds> started_at,
                       Seconds now) {
    return finalize(key, BuildStatus::failed, std::nullopt, error, started_at, now);
  }

  std::vector<BuildRecord> all() const {
    std::lock_guard lock(mu_);
    std::vector<BuildRecord> out;
    for (const auto& [k, r] : records_) out.push_back(r);
    return out;
  }

  /// Every accepted terminal write, in order.
  std::vector<RecordTransition> transitions() const {
    std::lock_guard lock(mu_);
    return transitions_;
  }

 private:
  bool finalize(const std::string& key, BuildStatus status, std::optional<std::string> url,
                std::optional<std::string> error, std::optional<Seconds> started_at, Seconds now) {
    std::lock_guard lock(mu_);
    auto [it, created] = records_.try_emplace(key, BuildRecord{key, BuildStatus::pending, {}, {}, now, {}, {}});
    BuildRecord& r = it->second;
    if (r.terminal()) return false;
    r.status = status;
    r.artifact_url = std::move(url);
    r.error_message = std::move(error);
    r.started_at = started_at;
    r.completed_at = now;
    transitions_.push_back(RecordTransition{key, status, now});
    save();
    return true;
  }

  void save() const {
    if (state_file_.empty()) return;
    auto arr = nlohmann::json::array();
    for (const auto& [key, r] : records_) {
      nlohmann::json j{{"key", r.key}, {"status", build_status_name(r.status)}, {"created_at", r.created_at}};
      if (r.artifact_url) j["url"] = *r.artifact_url;
      if (r.error_message) j["error"] = *r.error_message;
      if (r.started_at) j["started_at"] = *r.started_at;
      if (r.completed_at) j["completed_at"] = *r.completed_at;
      arr.push_back(std::move(j));
    }
    fsutil::write_file_atomic(state_file_, arr.dump(2) + "\n");
  }

  void load() {
    if (state_file_.empty()) return;
    auto text = fsutil::read_file(state_file_);
    if (!text) return;
    for (const auto& j : nlohmann::json::parse(*text)) {
      BuildRecord r;
      r.key = j.at("key").get<std::string>();
      auto status = j.at("status").get<std::string>();
      r.status = status == "built" ? BuildStatus::built : status == "failed" ? BuildStatus::failed : BuildStatus::pending;
      if (j.contains("url")) r.artifact_url = j.at("url").get<std::string>();
      if (j.contains("error")) r.error_message = j.at("error").get<std::string>();
      r.created_at = j.at("created_at").get<Seconds>();
      if (j.contains("started_at")) r.started_at = j.at("started_at").get<Seconds>();
      if (j.contains("completed_at")) r.completed_at = j.at("completed_at").get<Seconds>();
      records_.emplace(r.key, std::move(r));
    }
  }

  mutable std::mutex mu_;
  std::filesystem::path state_file_;
  std::map<std::string, BuildRecord> records_;
  std::vector<RecordTransition> transitions_;
};

}  // namespace pacloud

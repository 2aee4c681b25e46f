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
#include <optional>
#include <string>
#include <string_view>

#include "pacloud/core/package.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/farm/artifacts.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/queue.hpp"
#include "pacloud/farm/records.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

enum class ResponseStatus { available, pending, failed };

/// Answer to a package request.
struct Response {
  ResponseStatus status = ResponseStatus::pending;
  std::optional<std::string> url;    // available only
  std::optional<std::string> error;  // failed only

  friend bool operator==(const Response&, const Response&) = default;
};

inline std::string dead_letter_error(const QueueMessage& m) {
  return "build request " + m.id + " was dead-lettered after " + std::to_string(m.receive_count) +
         " deliveries without completing";
}

/// The server side: request handler over the compile queue, the build
/// record table and the artifact store.
///
/// A request for an unknown key creates a pending record and enqueues one
/// message; requests for a pending key do not enqueue again. A message that
/// is dead-lettered fails its still-pending record so clients stop waiting.
class BuildFarm {
 public:
  explicit BuildFarm(QueueConfig config = {}, const std::filesystem::path& state_root = {})
      : queue_(config, state_root.empty() ? std::filesystem::path{} : state_root / "queue.json"),
        records_(state_root.empty() ? std::filesystem::path{} : state_root / "records.json"),
        artifacts_(state_root.empty() ? std::filesystem::path{} : state_root / "artifacts") {
    queue_.on_dead_letter([this](const QueueMessage& m, Seconds now) {
      records_.finalize_failed(m.body, dead_letter_error(m), std::nullopt, now);
    });
  }

  BuildFarm(const BuildFarm&) = delete;
  BuildFarm& operator=(const BuildFarm&) = delete;

  Response handle_request(const BuildKey& key, Seconds now) {
    const auto canonical = key.str();
    auto [record, created] = records_.get_or_create_pending(canonical, now);
    if (created) {
      queue_.send(canonical, now);
      return Response{ResponseStatus::pending, {}, {}};
    }
    switch (record.status) {
      case BuildStatus::built: return Response{ResponseStatus::available, record.artifact_url, {}};
      case BuildStatus::failed: return Response{ResponseStatus::failed, {}, record.error_message};
      case BuildStatus::pending: break;
    }
    return Response{ResponseStatus::pending, {}, {}};
  }

  CompileQueue& queue() { return queue_; }
  RecordStore& records() { return records_; }
  ArtifactStore& artifacts() { return artifacts_; }
  const CompileQueue& queue() const { return queue_; }
  const RecordStore& records() const { return records_; }
  const ArtifactStore& artifacts() const { return artifacts_; }

 private:
  CompileQueue queue_;
  RecordStore records_;
  ArtifactStore artifacts_;
};

/// Presents a package repository plus the farm's artifacts as one store, the
/// way the client sees the bucket.
class FarmStore final : public RemoteStore {
 public:
  FarmStore(RemoteStore& repository, const ArtifactStore& artifacts) : repository_(repository), artifacts_(artifacts) {}

  std::optional<std::string> fetch(std::string_view path) override {
    constexpr std::string_view prefix = "artifacts/";
    if (path.starts_with(prefix) && path.ends_with(".tar")) {
      auto escaped = path.substr(prefix.size(), path.size() - prefix.size() - 4);
      return artifacts_.get(fsutil::unescape_key(escaped));
    }
    return repository_.fetch(path);
  }

 private:
  RemoteStore& repository_;
  const ArtifactStore& artifacts_;
};

}  // namespace pacloud

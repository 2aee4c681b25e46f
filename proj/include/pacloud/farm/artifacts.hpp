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
#include <string_view>
#include <vector>

#include "pacloud/error.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

inline constexpr std::string_view kStoreScheme = "store://";

inline std::string artifact_url(std::string_view canonical_key) { return std::string(kStoreScheme) + std::string(canonical_key); }

/// Canonical key named by a "store://<key>" URL, or nullopt for other URLs.
inline std::optional<std::string> key_from_artifact_url(std::string_view url) {
  if (!url.starts_with(kStoreScheme) || url.size() == kStoreScheme.size()) return std::nullopt;
  return std::string(url.substr(kStoreScheme.size()));
}

/// Binary package storage. The first write for a key wins; later writes
/// return the existing URL and leave the stored bytes untouched.
class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path root = {}) : root_(std::move(root)) {
    if (root_.empty()) return;
    std::error_code ec;
    if (!std::filesystem::is_directory(root_, ec)) return;
    for (const auto& f : std::filesystem::directory_iterator(root_)) {
      auto name = f.path().filename().string();
      if (!name.ends_with(".tar")) continue;
      auto key = fsutil::unescape_key(name.substr(0, name.size() - 4));
      if (auto bytes = fsutil::read_file(f.path())) blobs_.emplace(key, std::move(*bytes));
    }
  }

  std::string put(const std::string& key, std::string_view bytes) {
    std::lock_guard lock(mu_);
    auto [it, inserted] = blobs_.try_emplace(key, std::string(bytes));
    if (inserted) {
      accepted_.push_back(key);
      if (!root_.empty()) fsutil::write_file_atomic(root_ / (fsutil::escape_key(key) + ".tar"), bytes);
    }
    return artifact_url(key);
  }

  std::optional<std::string> get(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = blobs_.find(key);
    if (it == blobs_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return blobs_.size();
  }

  /// Keys whose put() stored bytes, in order.
  std::vector<std::string> accepted_writes() const {
    std::lock_guard lock(mu_);
    return accepted_;
  }

 private:
  mutable std::mutex mu_;
  std::filesystem::path root_;
  std::map<std::string, std::string> blobs_;
  std::vector<std::string> accepted_;
};

}  // namespace pacloud

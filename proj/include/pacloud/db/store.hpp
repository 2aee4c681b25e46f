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

#include "pacloud/core/package.hpp"
#include "pacloud/error.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

/// Read access to the package store: "manifest.txt", one "<category>.json"
/// per category, and built archives under "artifacts/".
///
/// fetch() returns nullopt when the object does not exist and throws
/// Errc::store_unreachable when the store cannot be contacted at all.
class RemoteStore {
 public:
  virtual ~RemoteStore() = default;
  virtual std::optional<std::string> fetch(std::string_view path) = 0;
};

inline std::string manifest_path() { return "manifest.txt"; }
inline std::string category_path(std::string_view category) { return std::string(category) + ".json"; }
inline std::string artifact_path(std::string_view canonical_key) {
  return "artifacts/" + fsutil::escape_key(canonical_key) + ".tar";
}
inline std::string artifact_path(const BuildKey& key) { return artifact_path(key.str()); }

/// Store backed by a local directory tree.
class DirectoryStore final : public RemoteStore {
 public:
  explicit DirectoryStore(std::filesystem::path root) : root_(std::move(root)) {}

  std::optional<std::string> fetch(std::string_view path) override {
    std::error_code ec;
    if (!std::filesystem::is_directory(root_, ec)) {
      throw Error(Errc::store_unreachable, "store directory " + root_.string() + " does not exist");
    }
    if (path.find("..") != std::string_view::npos) return std::nullopt;
    return fsutil::read_file(root_ / std::string(path));
  }

  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

/// In-memory store; `set_reachable(false)` simulates an outage.
class MemoryStore final : public RemoteStore {
 public:
  void put(std::string path, std::string bytes) {
    std::lock_guard lock(mu_);
    objects_[std::move(path)] = std::move(bytes);
  }
  void erase(const std::string& path) {
    std::lock_guard lock(mu_);
    objects_.erase(path);
  }
  void set_reachable(bool reachable) {
    std::lock_guard lock(mu_);
    reachable_ = reachable;
  }
  std::size_t fetch_count() const {
    std::lock_guard lock(mu_);
    return fetches_;
  }

  std::optional<std::string> fetch(std::string_view path) override {
    std::lock_guard lock(mu_);
    ++fetches_;
    if (!reachable_) throw Error(Errc::store_unreachable, "memory store marked unreachable");
    auto it = objects_.find(std::string(path));
    if (it == objects_.end()) return std::nullopt;
    return it->second;
  }

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::string> objects_;
  bool reachable_ = true;
  std::size_t fetches_ = 0;
};

}  // namespace pacloud

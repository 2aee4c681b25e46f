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

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "pacloud/core/package.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/emerge.hpp"
#include "pacloud/util/tar.hpp"

namespace pacloud {

struct BuildOutcome {
  bool success = true;
  std::string artifact;  // tar bytes when successful
  std::string error;     // compiler output when failed
  Seconds duration = 0;
};

/// Runs one compilation. A fresh executor is created for every message and
/// never reused.
class BuildExecutor {
 public:
  virtual ~BuildExecutor() = default;
  virtual BuildOutcome execute(const BuildKey& key) = 0;
};

class ExecutorFactory {
 public:
  virtual ~ExecutorFactory() = default;
  virtual std::unique_ptr<BuildExecutor> create() = 0;
};

/// Path of the single file a simulated build installs.
inline std::string simulated_install_path(const BuildKey& key) {
  return "usr/share/pacloud/" + key.package.category + "/" + key.package.name + "/" + key.package.name + "-" +
         key.version.str() + ".txt";
}

/// Deterministic archive for `key`: one file recording what was built and
/// the command that would have built it.
inline std::string simulated_artifact(const BuildKey& key) {
  std::string content = key.str() + "\n" + generate_emerge_commands(key) + "\n";
  return tar::write({tar::Entry{simulated_install_path(key), content, 0644}});
}

struct BuildSpec {
  Seconds duration = 1;
  std::optional<std::string> error;  // set: the build fails with this text
};

/// Executor table keyed by canonical BuildKey, then by "category/name",
/// then a default. Counts instances so tests can check that none is reused.
class SimulatedExecutorFactory final : public ExecutorFactory {
 public:
  explicit SimulatedExecutorFactory(BuildSpec fallback = {}) : fallback_(std::move(fallback)) {}

  void set(const std::string& key_or_package, BuildSpec spec) {
    std::lock_guard lock(mu_);
    table_[key_or_package] = std::move(spec);
  }

  BuildSpec lookup(const BuildKey& key) const {
    std::lock_guard lock(mu_);
    if (auto it = table_.find(key.str()); it != table_.end()) return it->second;
    if (auto it = table_.find(key.package.str()); it != table_.end()) return it->second;
    return fallback_;
  }

  std::unique_ptr<BuildExecutor> create() override {
    ++created_;
    return std::make_unique<Instance>(*this);
  }

  std::size_t instances_created() const { return created_.load(); }
  std::size_t executions() const { return executions_.load(); }

 private:
  class Instance final : public BuildExecutor {
   public:
    explicit Instance(SimulatedExecutorFactory& owner) : owner_(owner) {}
    BuildOutcome execute(const BuildKey& key) override {
      if (used_) throw std::logic_error("simulated executor reused across messages");
      used_ = true;
      ++owner_.executions_;
      auto spec = owner_.lookup(key);
      if (spec.error) return BuildOutcome{false, {}, *spec.error, spec.duration};
      return BuildOutcome{true, simulated_artifact(key), {}, spec.duration};
    }

   private:
    SimulatedExecutorFactory& owner_;
    bool used_ = false;
  };

  mutable std::mutex mu_;
  std::map<std::string, BuildSpec> table_;
  BuildSpec fallback_;
  std::atomic<std::size_t> created_{0};
  std::atomic<std::size_t> executions_{0};
};

}  // namespace pacloud

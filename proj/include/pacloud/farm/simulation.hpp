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
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/farm.hpp"
#include "pacloud/farm/worker.hpp"

namespace pacloud {

/// Discrete-event driver for a farm on a virtual clock. Time jumps straight
/// to the next worker wakeup or scheduled event, so timestamps are exact.
class FarmSimulation {
 public:
  explicit FarmSimulation(ExecutorFactory& executors, QueueConfig queue_config = {}, WorkerConfig worker_config = {})
      : farm_(queue_config), executors_(executors), worker_config_(worker_config) {}

  FarmSimulation(const FarmSimulation&) = delete;
  FarmSimulation& operator=(const FarmSimulation&) = delete;

  VirtualClock& clock() { return clock_; }
  Seconds now() const { return clock_.now(); }
  BuildFarm& farm() { return farm_; }

  Worker& add_worker() {
    workers_.push_back(std::make_unique<Worker>("worker-" + std::to_string(workers_.size()), farm_, executors_,
                                                worker_config_, clock_.now()));
    return *workers_.back();
  }
  void add_workers(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_worker();
  }
  Worker& worker(std::size_t i) { return *workers_.at(i); }
  std::size_t worker_count() const { return workers_.size(); }

  /// Runs `action` when the clock reaches `at`, before workers step at that
  /// instant. Events at equal times run in scheduling order.
  void schedule(Seconds at, std::function<void()> action) { events_.emplace(at, std::move(action)); }

  Response request(const BuildKey& key) { return farm_.handle_request(key, clock_.now()); }

  /// Processes every event up to and including `until`, then sets the clock
  /// to `until`.
  void run_until(Seconds until) {
    run_while(until, [] { return true; });
    if (clock_.now() < until) clock_.set(until);
  }

  /// Runs until `done()` holds after an event batch, or `limit` is reached.
  /// Returns whether `done()` held.
  bool run_until(Seconds limit, const std::function<bool()>& done) {
    if (done()) return true;
    return run_while(limit, [&] { return !done(); });
  }

  /// No pending record and no worker holding a build.
  bool settled() const {
    for (const auto& r : farm_.records().all()) {
      if (!r.terminal()) return false;
    }
    return std::none_of(workers_.begin(), workers_.end(),
                        [](const auto& w) { return w->mode() == WorkerMode::building; });
  }

 private:
  // Returns true if it stopped because `keep_going` turned false.
  bool run_while(Seconds until, const std::function<bool()>& keep_going) {
    while (true) {
      Seconds next = kNever;
      if (!events_.empty()) next = events_.begin()->first;
      for (const auto& w : workers_) next = std::min(next, w->next_wakeup());
      if (next > until || next == kNever) return false;
      if (next > clock_.now()) clock_.set(next);
      const Seconds now = clock_.now();
      while (!events_.empty() && events_.begin()->first <= now) {
        auto action = std::move(events_.begin()->second);
        events_.erase(events_.begin());
        action();
      }
      for (auto& w : workers_) {
        if (w->next_wakeup() <= now) w->step(now);
      }
      if (!keep_going()) return true;
    }
  }

  VirtualClock clock_;
  BuildFarm farm_;
  ExecutorFactory& executors_;
  WorkerConfig worker_config_;
  std::vector<std::unique_ptr<Worker>> workers_;
  std::multimap<Seconds, std::function<void()>> events_;
};

}  // namespace pacloud

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
#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "pacloud/core/package.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/farm.hpp"

namespace pacloud {

inline constexpr Seconds kNever = std::numeric_limits<Seconds>::infinity();

/// Spot-style reclaim notice.
inline constexpr Seconds kDefaultInterruptNotice = 120;

struct WorkerConfig {
  /// Delay between queue polls while idle and the queue was empty.
  Seconds poll_interval = 1;
  /// Visibility renewal cadence while building.
  Seconds renew_interval = 10;
};

enum class WorkerMode { idle, building, hibernated, stopped };

struct WorkerStats {
  std::size_t builds_started = 0;
  std::size_t published = 0;
  std::size_t discarded = 0;
  std::size_t renewals = 0;
  std::size_t stale_renewals = 0;
};

/// One compile worker driven by explicit step() calls at the times reported
/// by next_wakeup(). Polls the queue when idle, renews the visibility of the
/// message it holds every renew_interval, and publishes the outcome when the
/// build's work is done.
///
/// interrupt() models a reclaim notice: an idle worker stops; a build that
/// cannot finish within the notice keeps running until the notice expires
/// and then hibernates with its remaining work preserved. resume() picks the
/// build up where it left off.
class Worker {
 public:
  Worker(std::string name, BuildFarm& farm, ExecutorFactory& executors, WorkerConfig config = {},
         Seconds start_time = 0)
      : name_(std::move(name)), farm_(farm), executors_(executors), config_(config), next_poll_at_(start_time) {}

  const std::string& name() const { return name_; }
  WorkerMode mode() const { return mode_; }
  const WorkerStats& stats() const { return stats_; }
  bool crashed() const { return crashed_; }

  /// Work left on the current build as of its last step, in seconds.
  Seconds remaining_work() const { return job_ ? job_->remaining : 0; }
  std::optional<std::string> current_key() const {
    if (!job_) return std::nullopt;
    return job_->key.str();
  }

  Seconds next_wakeup() const {
    switch (mode_) {
      case WorkerMode::idle: return next_poll_at_;
      case WorkerMode::building: return std::min({completion_time(), hibernate_at_.value_or(kNever), job_->next_renewal_at});
      case WorkerMode::hibernated:
      case WorkerMode::stopped: return kNever;
    }
    return kNever;
  }

  void step(Seconds now) {
    if (mode_ == WorkerMode::building) advance_build(now);
    if (mode_ == WorkerMode::idle && now >= next_poll_at_) poll(now);
  }

  void interrupt(Seconds now, Seconds notice = kDefaultInterruptNotice) {
    if (mode_ == WorkerMode::idle) {
      mode_ = WorkerMode::stopped;
      return;
    }
    if (mode_ != WorkerMode::building) return;
    Seconds left = completion_time() - now;
    if (left <= notice) {
      stop_after_build_ = true;
    } else {
      hibernate_at_ = now + notice;
    }
  }

  void resume(Seconds now) {
    if (crashed_) return;
    if (mode_ == WorkerMode::hibernated) {
      mode_ = WorkerMode::building;
      job_->segment_start = now;
      job_->next_renewal_at = now;
      hibernate_at_.reset();
    } else if (mode_ == WorkerMode::stopped) {
      mode_ = WorkerMode::idle;
      next_poll_at_ = now;
    } else if (mode_ == WorkerMode::building) {
      // notice withdrawn before it took effect
      stop_after_build_ = false;
      hibernate_at_.reset();
    }
  }

  /// The instance disappears: no further queue or store calls, the held
  /// message resurfaces after its visibility timeout.
  void crash() {
    crashed_ = true;
    mode_ = WorkerMode::stopped;
    job_.reset();
  }

 private:
  struct Job {
    std::string handle;
    BuildKey key;
    BuildOutcome outcome;
    Seconds remaining = 0;
    Seconds segment_start = 0;
    Seconds next_renewal_at = 0;
    Seconds started_at = 0;
  };

  Seconds completion_time() const { return job_->segment_start + job_->remaining; }

  void poll(Seconds now) {
    auto delivery = farm_.queue().receive(now);
    if (!delivery) {
      next_poll_at_ = now + config_.poll_interval;
      return;
    }
    BuildKey key;
    try {
      key = parse_build_key(delivery->message.body);
    } catch (const Error& e) {
      farm_.records().finalize_failed(delivery->message.body, e.what(), now, now);
      farm_.queue().remove(delivery->handle);
      next_poll_at_ = now;
      return;
    }
    auto executor = executors_.create();
    Job job;
    job.handle = delivery->handle;
    job.key = key;
    job.outcome = executor->execute(key);
    job.remaining = std::max<Seconds>(job.outcome.duration, 0);
    job.segment_start = now;
    job.next_renewal_at = now + config_.renew_interval;
    job.started_at = now;
    job_ = std::move(job);
    mode_ = WorkerMode::building;
    ++stats_.builds_started;
    advance_build(now);
  }

  void advance_build(Seconds now) {
    while (mode_ == WorkerMode::building) {
      const Seconds done_at = completion_time();
      const Seconds hibernate_at = hibernate_at_.value_or(kNever);
      const Seconds renew_at = job_->next_renewal_at;
      const Seconds next = std::min({done_at, hibernate_at, renew_at});
      if (next > now) return;
      if (next == done_at) {
        finish(done_at);
      } else if (next == hibernate_at) {
        job_->remaining -= hibernate_at - job_->segment_start;
        job_->segment_start = hibernate_at;
        hibernate_at_.reset();
        mode_ = WorkerMode::hibernated;
      } else {
        ++stats_.renewals;
        if (farm_.queue().renew(job_->handle, now) == QueueStatus::stale_handle) ++stats_.stale_renewals;
        job_->next_renewal_at = renew_at + config_.renew_interval;
      }
    }
  }

  void finish(Seconds at) {
    Job job = std::move(*job_);
    job_.reset();
    const auto canonical = job.key.str();
    auto existing = farm_.records().get(canonical);
    if (existing && existing->terminal()) {
      ++stats_.discarded;
    } else if (job.outcome.success) {
      auto url = farm_.artifacts().put(canonical, job.outcome.artifact);
      farm_.records().finalize_built(canonical, url, job.started_at, at);
      ++stats_.published;
    } else {
      farm_.records().finalize_failed(canonical, job.outcome.error, job.started_at, at);
      ++stats_.published;
    }
    farm_.queue().remove(job.handle);

    if (stop_after_build_) {
      stop_after_build_ = false;
      mode_ = WorkerMode::stopped;
    } else {
      mode_ = WorkerMode::idle;
      next_poll_at_ = at;
    }
  }

  std::string name_;
  BuildFarm& farm_;
  ExecutorFactory& executors_;
  WorkerConfig config_;
  WorkerMode mode_ = WorkerMode::idle;
  Seconds next_poll_at_ = 0;
  std::optional<Job> job_;
  std::optional<Seconds> hibernate_at_;
  bool stop_after_build_ = false;
  bool crashed_ = false;
  WorkerStats stats_;
};

}  // namespace pacloud

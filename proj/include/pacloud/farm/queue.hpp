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
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

struct QueueMessage {
  std::string id;
  std::string body;  // canonical BuildKey string
  Seconds visible_at = 0;
  unsigned receive_count = 0;

  friend bool operator==(const QueueMessage&, const QueueMessage&) = default;
};

struct Delivery {
  QueueMessage message;
  /// Receipt for this delivery only; it goes stale once the message is
  /// delivered again.
  std::string handle;
};

enum class QueueStatus { ok, stale_handle };

struct QueueConfig {
  Seconds visibility_timeout = 15;
  /// Deliveries allowed before the next eligibility moves the message to the
  /// dead-letter queue.
  unsigned max_receives = 3;
};

/// At-least-once compile request queue with visibility timeouts and a
/// dead-letter queue. Every operation is atomic.
class CompileQueue {
 public:
  using DeadLetterHook = std::function<void(const QueueMessage&, Seconds now)>;

  explicit CompileQueue(QueueConfig config = {}, std::filesystem::path state_file = {})
      : config_(config), state_file_(std::move(state_file)) {
    load();
  }

  const QueueConfig& config() const { return config_; }

  /// Called (outside the queue lock) for each message moved to the
  /// dead-letter queue.
  void on_dead_letter(DeadLetterHook hook) {
    std::lock_guard lock(mu_);
    hook_ = std::move(hook);
  }

  std::string send(std::string body, Seconds now) {
    std::lock_guard lock(mu_);
    QueueMessage m{"msg-" + std::to_string(++sequence_), std::move(body), now, 0};
    messages_.push_back(m);
    save();
    return m.id;
  }

  /// Delivers the oldest visible message, hiding it for the visibility
  /// timeout. Messages that already used up their deliveries are moved to
  /// the dead-letter queue on the way.
  std::optional<Delivery> receive(Seconds now) {
    std::vector<QueueMessage> dead;
    std::optional<Delivery> out;
    DeadLetterHook hook;
    {
      std::lock_guard lock(mu_);
      for (auto it = messages_.begin(); it != messages_.end();) {
        if (now < it->visible_at) {
          ++it;
          continue;
        }
        if (it->receive_count >= config_.max_receives) {
          dead.push_back(*it);
          dead_letters_.push_back(*it);
          it = messages_.erase(it);
          continue;
        }
        ++it->receive_count;
        it->visible_at = now + config_.visibility_timeout;
        out = Delivery{*it, handle_for(*it)};
        break;
      }
      if (out || !dead.empty()) save();
      hook = hook_;
    }
    if (hook) {
      for (const auto& m : dead) hook(m, now);
    }
    return out;
  }

  QueueStatus renew(const std::string& handle, Seconds now) {
    std::lock_guard lock(mu_);
    auto it = find_by_handle(handle);
    if (it == messages_.end()) return QueueStatus::stale_handle;
    it->visible_at = now + config_.visibility_timeout;
    save();
    return QueueStatus::ok;
  }

  QueueStatus remove(const std::string& handle) {
    std::lock_guard lock(mu_);
    auto it = find_by_handle(handle);
    if (it == messages_.end()) return QueueStatus::stale_handle;
    messages_.erase(it);
    save();
    return QueueStatus::ok;
  }

  /// Messages still in the main queue, visible or not.
  std::size_t depth() const {
    std::lock_guard lock(mu_);
    return messages_.size();
  }

  std::vector<QueueMessage> messages() const {
    std::lock_guard lock(mu_);
    return messages_;
  }

  /// Maintenance listing of the dead-letter queue.
  std::vector<QueueMessage> dead_letters() const {
    std::lock_guard lock(mu_);
    return dead_letters_;
  }

 private:
  static std::string handle_for(const QueueMessage& m) { return m.id + "#" + std::to_string(m.receive_count); }

  std::vector<QueueMessage>::iterator find_by_handle(const std::string& handle) {
    return std::find_if(messages_.begin(), messages_.end(),
                        [&](const QueueMessage& m) { return handle_for(m) == handle; });
  }

  static nlohmann::json to_json(const std::vector<QueueMessage>& ms) {
    auto arr = nlohmann::json::array();
    for (const auto& m : ms) {
      arr.push_back({{"id", m.id}, {"body", m.body}, {"visible_at", m.visible_at}, {"receive_count", m.receive_count}});
    }
    return arr;
  }
  static std::vector<QueueMessage> from_json(const nlohmann::json& arr) {
    std::vector<QueueMessage> out;
    for (const auto& j : arr) {
      out.push_back(QueueMessage{j.at("id").get<std::string>(), j.at("body").get<std::string>(),
                                 j.at("visible_at").get<Seconds>(), j.at("receive_count").get<unsigned>()});
    }
    return out;
  }

  void save() const {
    if (state_file_.empty()) return;
    nlohmann::json doc{{"sequence", sequence_}, {"messages", to_json(messages_)}, {"dead_letters", to_json(dead_letters_)}};
    fsutil::write_file_atomic(state_file_, doc.dump(2) + "\n");
  }

  void load() {
    if (state_file_.empty()) return;
    auto text = fsutil::read_file(state_file_);
    if (!text) return;
    auto doc = nlohmann::json::parse(*text);
    sequence_ = doc.at("sequence").get<unsigned long long>();
    messages_ = from_json(doc.at("messages"));
    dead_letters_ = from_json(doc.at("dead_letters"));
  }

  mutable std::mutex mu_;
  QueueConfig config_;
  std::filesystem::path state_file_;
  unsigned long long sequence_ = 0;
  std::vector<QueueMessage> messages_;  // oldest first
  std::vector<QueueMessage> dead_letters_;
  DeadLetterHook hook_;
};

}  // namespace pacloud

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

#include <httplib.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include "json.hpp"
#include <string>
#include <thread>
#include <vector>

#include "pacloud/client/transport.hpp"
#include "pacloud/client/wire.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/farm.hpp"
#include "pacloud/farm/worker.hpp"

namespace pacloud {

/// HTTP front end of a farm:
///   POST /package        wire request document -> response document
///   GET  /store/<path>   repository documents and built artifacts
///   GET  /dead-letters   dead-lettered messages as JSON
class FarmService {
 public:
  FarmService(BuildFarm& farm, RemoteStore& repository, const Clock& clock)
      : farm_(farm), store_(repository, farm.artifacts()), clock_(clock) {
    server_.Post("/package", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        res.set_content(serve_exchange(farm_, req.body, clock_.now()), "application/json");
      } catch (const Error& e) {
        res.status = 400;
        res.set_content(e.what(), "text/plain");
      }
    });
    server_.Get(R"(/store/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        auto body = store_.fetch(req.matches[1].str());
        if (!body) {
          res.status = 404;
          return;
        }
        res.set_content(*body, "application/octet-stream");
      } catch (const Error& e) {
        res.status = 503;
        res.set_content(e.what(), "text/plain");
      }
    });
    server_.Get("/dead-letters", [this](const httplib::Request&, httplib::Response& res) {
      auto out = nlohmann::json::array();
      for (const auto& m : farm_.queue().dead_letters()) {
        out.push_back({{"id", m.id}, {"body", m.body}, {"receive_count", m.receive_count}});
      }
      res.set_content(out.dump(2) + "\n", "application/json");
    });
  }

  ~FarmService() { stop(); }

  FarmService(const FarmService&) = delete;
  FarmService& operator=(const FarmService&) = delete;

  /// Binds and serves on a background thread. Port 0 picks a free port.
  /// Returns the bound port.
  int start(const std::string& host, int port) {
    int bound = port == 0 ? server_.bind_to_any_port(host) : (server_.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error(Errc::io_error, "cannot bind " + host + ":" + std::to_string(port));
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return bound;
  }

  /// Serves on the calling thread until stop() is called elsewhere.
  void run(const std::string& host, int port) {
    if (!server_.listen(host, port)) throw Error(Errc::io_error, "cannot listen on " + host + ":" + std::to_string(port));
  }

  void stop() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

 private:
  BuildFarm& farm_;
  FarmStore store_;
  const Clock& clock_;
  httplib::Server server_;
  std::thread thread_;
};

/// Workers on their own threads, stepping against a real clock.
class WorkerPool {
 public:
  WorkerPool(BuildFarm& farm, ExecutorFactory& executors, const Clock& clock, std::size_t n, WorkerConfig config = {})
      : clock_(clock) {
    for (std::size_t i = 0; i < n; ++i) {
      workers_.push_back(
          std::make_unique<Worker>("worker-" + std::to_string(i), farm, executors, config, clock.now()));
    }
    for (auto& w : workers_) {
      threads_.emplace_back([this, worker = w.get()] { loop(*worker); });
    }
  }

  ~WorkerPool() { stop(); }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  void stop() {
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) {
      if (t.joinable()) t.join();
    }
  }

 private:
  void loop(Worker& w) {
    std::unique_lock lock(mu_);
    while (!stopping_) {
      lock.unlock();
      w.step(clock_.now());
      const Seconds wait = std::clamp(w.next_wakeup() - clock_.now(), 0.0, 0.25);
      lock.lock();
      cv_.wait_for(lock, std::chrono::duration<double>(wait), [this] { return stopping_; });
    }
  }

  const Clock& clock_;
  std::vector<std::unique_ptr<Worker>> workers_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopping_ = false;
};

}  // namespace pacloud

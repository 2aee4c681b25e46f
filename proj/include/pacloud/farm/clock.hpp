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
#include <chrono>

namespace pacloud {

/// Seconds on some fixed timeline. Every farm component reads time through
/// a Clock so tests can drive it virtually.
using Seconds = double;

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Seconds now() const = 0;
};

class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(Seconds start = 0.0) : now_(start) {}
  Seconds now() const override { return now_.load(); }
  void set(Seconds t) { now_.store(t); }
  void advance(Seconds dt) { now_.store(now_.load() + dt); }

 private:
  std::atomic<Seconds> now_;
};

class SystemClock final : public Clock {
 public:
  Seconds now() const override {
    using namespace std::chrono;
    return duration<double>(system_clock::now().time_since_epoch()).count();
  }
};

}  // namespace pacloud

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

#include <functional>
#include <string>
#include <string_view>

#include "pacloud/client/wire.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/farm/farm.hpp"

namespace pacloud {

/// Carries one request document to the farm and returns the response
/// document. Throws Errc::transport_error when the exchange fails.
class FarmTransport {
 public:
  virtual ~FarmTransport() = default;
  virtual std::string exchange(const std::string& request_body) = 0;
};

/// Server-side handling of one wire exchange.
inline std::string serve_exchange(BuildFarm& farm, std::string_view request_body, Seconds now) {
  return encode_response(farm.handle_request(decode_request(request_body), now));
}

/// Talks to a BuildFarm in the same process, through the wire encoding.
class InProcessTransport final : public FarmTransport {
 public:
  InProcessTransport(BuildFarm& farm, const Clock& clock) : farm_(farm), clock_(clock) {}

  std::string exchange(const std::string& request_body) override {
    ++exchanges_;
    if (observer_) observer_(request_body);
    return serve_exchange(farm_, request_body, clock_.now());
  }

  std::size_t exchanges() const { return exchanges_; }
  void set_observer(std::function<void(const std::string&)> observer) { observer_ = std::move(observer); }

 private:
  BuildFarm& farm_;
  const Clock& clock_;
  std::size_t exchanges_ = 0;
  std::function<void(const std::string&)> observer_;
};

inline Response request_package(FarmTransport& transport, const BuildKey& key) {
  return decode_response(transport.exchange(encode_request(key)));
}

}  // namespace pacloud

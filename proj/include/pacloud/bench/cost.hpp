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

#include "pacloud/error.hpp"

namespace pacloud::bench {

/// Monthly cost of keeping `n_packages` binaries of `avg_package_mb` each
/// in object storage at `price_per_gb_month`.
inline double estimate_storage_cost(double n_packages, double avg_package_mb, double price_per_gb_month) {
  if (n_packages < 0 || avg_package_mb < 0 || price_per_gb_month < 0) {
    throw Error(Errc::invalid_argument, "storage cost inputs must be non-negative");
  }
  return n_packages * avg_package_mb / 1024 * price_per_gb_month;
}

}  // namespace pacloud::bench

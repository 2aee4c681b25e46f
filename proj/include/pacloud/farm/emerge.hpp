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

#include <string>

#include "pacloud/core/package.hpp"

namespace pacloud {

/// The command a worker runs for `key`: build-time dependencies first
/// (runtime dependencies are requested by the client separately), then a
/// binary package of the target without installing it.
inline std::string generate_emerge_commands(const BuildKey& key) {
  const std::string target = "=" + key.package.str() + "-" + key.version.str();
  return "env USE=\"" + key.useflags.join(" ") + "\" emerge --onlydeps --onlydeps-with-rdeps n " + target +
         " && emerge --buildpkgonly " + target;
}

}  // namespace pacloud

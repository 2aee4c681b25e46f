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

// Everything except the HTTP pieces (client/http.hpp, farm/service.hpp),
// which pull in cpp-httplib.

#include "pacloud/bench/cost.hpp"
#include "pacloud/bench/durations.hpp"
#include "pacloud/bench/makespan.hpp"
#include "pacloud/client/cli.hpp"
#include "pacloud/client/commands.hpp"
#include "pacloud/client/config.hpp"
#include "pacloud/client/transport.hpp"
#include "pacloud/client/wire.hpp"
#include "pacloud/core/atom.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/db/local_db.hpp"
#include "pacloud/db/metadata.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/deps/dep_expr.hpp"
#include "pacloud/deps/ebuild.hpp"
#include "pacloud/deps/portage_tree.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/artifacts.hpp"
#include "pacloud/farm/emerge.hpp"
#include "pacloud/farm/executor.hpp"
#include "pacloud/farm/farm.hpp"
#include "pacloud/farm/queue.hpp"
#include "pacloud/farm/records.hpp"
#include "pacloud/farm/simulation.hpp"
#include "pacloud/farm/worker.hpp"
#include "pacloud/resolve/resolver.hpp"
#include "pacloud/util/fs.hpp"
#include "pacloud/util/tar.hpp"

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
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pacloud/client/cli.hpp"
#include "pacloud/client/config.hpp"
#include "pacloud/client/transport.hpp"
#include "pacloud/client/wire.hpp"
#include "pacloud/core/atom.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/db/local_db.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/error.hpp"
#include "pacloud/farm/artifacts.hpp"
#include "pacloud/farm/clock.hpp"
#include "pacloud/resolve/resolver.hpp"
#include "pacloud/util/fs.hpp"
#include "pacloud/util/tar.hpp"

namespace pacloud {

/// Append-only operation log, one timestamped line per operation. A log
/// that cannot be opened is skipped silently.
class OperationLog {
 public:
  explicit OperationLog(std::filesystem::path path = {}) : path_(std::move(path)) {}

  void write(const std::string& line) const {
    if (path_.empty()) return;
    std::ofstream out(path_, std::ios::app);
    if (!out) return;
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    out << stamp << ' ' << line << '\n';
  }

 private:
  std::filesystem::path path_;
};

/// Everything a client command touches. `farm`, `store` and `clock` may be
/// null for commands that do not need them.
struct ClientContext {
  Config config;
  FarmTransport* farm = nullptr;
  RemoteStore* store = nullptr;
  const Clock* clock = nullptr;
  std::function<void(Seconds)> sleep;
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;

  FarmTransport& require_farm() const {
    if (!farm) throw Error(Errc::missing_server_url, "[server] api_url is not set");
    return *farm;
  }
  RemoteStore& require_store() const {
    if (!store) throw Error(Errc::missing_server_url, "[server] store_url is not set");
    return *store;
  }
  OperationLog log() const { return OperationLog(config.log_path); }
  LocalDb db() const { return LocalDb(config.db_path); }
};

/// Polls until the package is available, sleeping poll_interval between
/// requests. `first` is used in place of the first request when the caller
/// already has a response.
inline std::string await_package(ClientContext& ctx, const BuildKey& key, std::optional<Response> first = {}) {
  auto& farm = ctx.require_farm();
  const Seconds start = ctx.clock->now();
  while (true) {
    Response r = first ? *first : request_package(farm, key);
    first.reset();
    switch (r.status) {
      case ResponseStatus::available: return *r.url;
      case ResponseStatus::failed:
        throw Error(Errc::build_failed, key.str() + ": " + r.error.value_or(""));
      case ResponseStatus::pending: break;
    }
    if (ctx.clock->now() - start >= ctx.config.timeout) {
      throw Error(Errc::timeout_error, key.str() + " still pending after " + std::to_string(ctx.config.timeout) + " s");
    }
    ctx.sleep(ctx.config.poll_interval);
  }
}

namespace detail {

inline std::vector<std::string> unpack_archive(std::string_view bytes, const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : tar::read(bytes)) {
    const fs::path target = root / entry.path;
    std::error_code ec;
    if (fs::is_directory(target, ec)) throw Error(Errc::unpack_error, target.string() + " is a directory");
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw Error(Errc::unpack_error, "cannot create " + target.parent_path().string() + ": " + ec.message());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out.write(entry.content.data(), static_cast<std::streamsize>(entry.content.size()));
    if (!out) throw Error(Errc::unpack_error, "cannot write " + target.string());
    files.push_back(entry.path);
  }
  return files;
}

inline void remove_files(const std::vector<std::string>& files, const std::filesystem::path& root) {
  for (const auto& f : files) {
    const auto target = root / f;
    std::error_code ec;
    std::filesystem::remove(target, ec);
    fsutil::prune_empty_parents(target.parent_path(), root);
  }
}

inline std::string download(ClientContext& ctx, const std::string& url) {
  auto key = key_from_artifact_url(url);
  if (!key) throw Error(Errc::protocol_error, "unsupported artifact url \"" + url + "\"");
  auto bytes = ctx.require_store().fetch(artifact_path(*key));
  if (!bytes) throw Error(Errc::transport_error, "artifact " + url + " not found in store");
  return *bytes;
}

/// Resolves, requests, downloads and installs. `explicitly` decides the
/// explicit flag of each installed package.
inline void install_atoms(ClientContext& ctx, const std::vector<DependencyAtom>& targets,
                          const std::function<bool(const PackageId&, const DbSnapshot&)>& explicitly) {
  auto db = ctx.db();
  const auto snapshot = db.snapshot();
  auto plan = resolve_runtime_closure(targets, snapshot, ctx.config.use_flags);

  // Named targets that are already installed are installed again.
  for (const auto& atom : targets) {
    if (!plan.skipped_installed.contains(atom.package)) continue;
    if (std::any_of(plan.steps.begin(), plan.steps.end(), [&](const auto& s) { return s.package == atom.package; })) {
      continue;
    }
    const auto& meta = snapshot.at(atom.package);
    PlanStep step{atom.package, *meta.installed_version(), {}};
    for (const auto& dep : runtime_dependencies(meta, step.version, ctx.config.use_flags)) {
      auto it = snapshot.find(dep.package);
      bool present = it != snapshot.end() && it->second.is_installed();
      if (present && std::find(step.dependencies.begin(), step.dependencies.end(), dep.package) == step.dependencies.end()) {
        step.dependencies.push_back(dep.package);
      }
    }
    plan.steps.push_back(std::move(step));
  }

  std::vector<BuildKey> keys;
  for (const auto& step : plan.steps) keys.push_back(BuildKey{step.package, step.version, ctx.config.use_flags});

  // Ask for every missing binary before waiting on any, so the farm can
  // build them in parallel.
  std::map<std::string, Response> first_response;
  for (const auto& key : keys) {
    if (db.archive_cache_get(key)) continue;
    first_response.emplace(key.str(), request_package(ctx.require_farm(), key));
  }

  for (std::size_t i = 0; i < plan.steps.size(); ++i) {
    const auto& step = plan.steps[i];
    const auto& key = keys[i];
    std::string archive;
    if (auto cached = db.archive_cache_get(key)) {
      archive = std::move(*cached);
      *ctx.out << ">>> " << key.str() << ": using cached archive\n";
    } else {
      auto first = first_response.find(key.str());
      auto url = await_package(ctx, key, first == first_response.end() ? std::nullopt : std::optional{first->second});
      archive = download(ctx, url);
      db.archive_cache_put(key, archive);
      *ctx.out << ">>> " << key.str() << ": downloaded " << url << "\n";
    }
    auto files = unpack_archive(archive, ctx.config.install_root);
    db.record_install(step.package, step.version, explicitly(step.package, snapshot), step.dependencies, files);
    *ctx.out << ">>> installed " << step.package.str() << "-" << step.version.str() << "\n";
    ctx.log().write("install " + key.str());
  }
  if (plan.steps.empty()) *ctx.out << "nothing to install\n";
}

inline int report_failure(ClientContext& ctx, const Error& e) {
  *ctx.err << "pacloud: " << e.what() << "\n";
  ctx.log().write(std::string("error ") + e.what());
  return kExitFailure;
}

}  // namespace detail

inline int cmd_search(ClientContext& ctx, const std::string& key) {
  try {
    *ctx.out << format_search_results(key, ctx.db().search(key));
    return kExitOk;
  } catch (const Error& e) {
    return detail::report_failure(ctx, e);
  }
}

inline int cmd_install(ClientContext& ctx, const std::vector<std::string>& targets) {
  try {
    std::vector<DependencyAtom> atoms;
    std::set<PackageId> named;
    for (const auto& t : targets) {
      atoms.push_back(parse_atom(t));
      named.insert(atoms.back().package);
    }
    detail::install_atoms(ctx, atoms, [&](const PackageId& id, const DbSnapshot& snapshot) {
      if (named.contains(id)) return true;
      auto it = snapshot.find(id);
      return it != snapshot.end() && it->second.is_installed() && it->second.explicitly_installed;
    });
    return kExitOk;
  } catch (const Error& e) {
    return detail::report_failure(ctx, e);
  }
}

inline int cmd_remove(ClientContext& ctx, const std::vector<std::string>& targets) {
  try {
    std::set<PackageId> roots;
    for (const auto& t : targets) roots.insert(parse_atom(t).package);
    auto db = ctx.db();
    const auto snapshot = db.snapshot();
    for (const auto& id : compute_orphans(snapshot, roots)) {
      detail::remove_files(snapshot.at(id).files, ctx.config.install_root);
      db.record_removal(id);
      *ctx.out << ">>> removed " << id.str() << "-" << *snapshot.at(id).installed << "\n";
      ctx.log().write("remove " + id.str());
    }
    return kExitOk;
  } catch (const Error& e) {
    return detail::report_failure(ctx, e);
  }
}

/// Upgrades each explicitly installed package (or each named one) to the
/// highest known version, keeping its explicit flag and the user's flags.
/// Files of the old version that the new one does not ship are removed.
inline int cmd_upgrade(ClientContext& ctx, const std::vector<std::string>& targets) {
  try {
    auto db = ctx.db();
    auto snapshot = db.snapshot();
    std::vector<PackageId> candidates;
    if (targets.empty()) {
      for (const auto& [id, meta] : snapshot) {
        if (meta.is_installed() && meta.explicitly_installed) candidates.push_back(id);
      }
    } else {
      for (const auto& t : targets) {
        auto id = parse_atom(t).package;
        auto it = snapshot.find(id);
        if (it == snapshot.end() || !it->second.is_installed()) throw Error(Errc::not_installed, id.str());
        candidates.push_back(id);
      }
    }
    bool any = false;
    for (const auto& id : candidates) {
      const auto meta = *db.load(id);
      const auto installed = *meta.installed_version();
      auto best = select_best_version(DependencyAtom{Specifier::any, id, std::nullopt}, meta.known_versions());
      if (!best || *best <= installed) continue;
      any = true;
      *ctx.out << ">>> upgrading " << id.str() << " " << installed.str() << " -> " << best->str() << "\n";
      const bool was_explicit = meta.explicitly_installed;
      detail::install_atoms(ctx, {DependencyAtom{Specifier::equal, id, *best}},
                            [&](const PackageId& p, const DbSnapshot& snap) {
                              if (p == id) return was_explicit;
                              auto it = snap.find(p);
                              return it != snap.end() && it->second.is_installed() && it->second.explicitly_installed;
                            });
      const auto fresh = *db.load(id);
      std::vector<std::string> stale;
      for (const auto& f : meta.files) {
        if (std::find(fresh.files.begin(), fresh.files.end(), f) == fresh.files.end()) stale.push_back(f);
      }
      detail::remove_files(stale, ctx.config.install_root);
      ctx.log().write("upgrade " + id.str() + " " + installed.str() + " -> " + best->str());
    }
    if (!any) *ctx.out << "all packages are up to date\n";
    return kExitOk;
  } catch (const Error& e) {
    return detail::report_failure(ctx, e);
  }
}

inline int cmd_update(ClientContext& ctx) {
  try {
    auto report = ctx.db().sync_from_store(ctx.require_store());
    *ctx.out << report.summary() << "\n";
    ctx.log().write("update " + report.summary().substr(0, report.summary().find('\n')));
    return kExitOk;
  } catch (const Error& e) {
    return detail::report_failure(ctx, e);
  }
}

inline int run_command(ClientContext& ctx, const Command& cmd) {
  switch (cmd.verb) {
    case Verb::search: return cmd_search(ctx, cmd.arguments.at(0));
    case Verb::install: return cmd_install(ctx, cmd.arguments);
    case Verb::remove: return cmd_remove(ctx, cmd.arguments);
    case Verb::upgrade: return cmd_upgrade(ctx, cmd.arguments);
    case Verb::update: return cmd_update(ctx);
    case Verb::help: *ctx.out << usage_text(); return kExitOk;
  }
  return kExitUsage;
}

}  // namespace pacloud

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
#include <cctype>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/db/lock.hpp"
#include "pacloud/db/metadata.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/error.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

using DbSnapshot = std::map<PackageId, PackageMetadata>;

struct Manifest {
  std::vector<std::string> categories;
};

/// One category name per line. A single trailing newline is allowed; blank
/// lines, duplicates and invalid names are not.
inline Manifest parse_manifest(std::string_view text) {
  Manifest m;
  if (text.ends_with('\n')) text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::malformed_manifest, "manifest lists no categories");
  std::set<std::string> seen;
  std::size_t line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line;
    auto nl = text.find('\n', start);
    std::string name(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (!name.empty() && name.back() == '\r') name.pop_back();
    if (name.empty()) throw Error(Errc::malformed_manifest, line, "empty line");
    if (!is_valid_category(name)) throw Error(Errc::malformed_manifest, line, "invalid category \"" + name + "\"");
    if (!seen.insert(name).second) throw Error(Errc::malformed_manifest, line, "duplicate category \"" + name + "\"");
    m.categories.push_back(std::move(name));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return m;
}

inline std::string render_manifest(const Manifest& m) {
  std::string out;
  for (const auto& c : m.categories) out += c + "\n";
  return out;
}

/// Decodes a category document: an object mapping package name to its
/// metadata (remote fields only; local-only fields are ignored).
inline std::map<std::string, PackageMetadata> parse_category_document(std::string_view category,
                                                                      std::string_view text) {
  std::map<std::string, PackageMetadata> out;
  try {
    auto doc = nlohmann::json::parse(text);
    if (!doc.is_object()) throw Error(Errc::malformed_category_document, "category document must be an object");
    for (const auto& [name, value] : doc.items()) {
      auto meta = metadata_from_json(value);
      if (meta.name.category != category || meta.name.name != name) {
        throw Error(Errc::malformed_category_document,
                    "entry \"" + name + "\" names " + meta.name.str() + " in category " + std::string(category));
      }
      meta.installed.reset();
      meta.explicitly_installed = false;
      meta.required_by.clear();
      meta.files.clear();
      out.emplace(name, std::move(meta));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::malformed_category_document, std::string(category) + ": " + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_category_document) throw;
    throw Error(Errc::malformed_category_document, std::string(category) + ": " + e.what());
  }
  return out;
}

inline std::string render_category_document(const std::vector<PackageMetadata>& packages) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& p : packages) doc[p.name.name] = metadata_to_json(p, MetadataFields::remote_only);
  return dump_document(doc);
}

struct SyncReport {
  std::size_t categories = 0;
  std::size_t added = 0;
  std::size_t updated = 0;
  std::size_t unchanged = 0;
  /// (category, reason) for category documents that could not be used.
  std::vector<std::pair<std::string, std::string>> skipped;

  std::string summary() const {
    std::ostringstream out;
    out << "synced " << categories << " categories: " << added << " added, " << updated << " updated, "
        << unchanged << " unchanged";
    for (const auto& [category, reason] : skipped) out << "\nskipped " << category << ": " << reason;
    return out.str();
  }
};

struct SearchResult {
  PackageId package;
  std::vector<Version> versions;  // ascending
  std::optional<Version> installed;
  std::string description;
};

/// Search output in the listing format of the command line client:
///
///   sys-libs/ncurses ( 5.9-r101 6.0-r1 6.0-r2 6.1-r2 ) [installed: 6.1-r2]
///     console display library
inline std::string format_search_results(std::string_view key, const std::vector<SearchResult>& results) {
  std::string out = "Results for search key: " + std::string(key) + "\n";
  for (const auto& r : results) {
    out += r.package.str() + " (";
    for (const auto& v : r.versions) out += " " + v.str();
    out += " )";
    if (r.installed) out += " [installed: " + r.installed->str() + "]";
    out += "\n  " + r.description + "\n";
  }
  return out;
}

/// Flat-file package database laid out as <root>/<category>/<name>/metadata.json,
/// with cached archives under <root>/<category>/<name>/archives/.
///
/// Mutations take the root's advisory write lock for their duration.
class LocalDb {
 public:
  explicit LocalDb(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }

  std::filesystem::path package_dir(const PackageId& id) const { return root_ / id.category / id.name; }
  std::filesystem::path metadata_path(const PackageId& id) const { return package_dir(id) / "metadata.json"; }
  std::filesystem::path archive_path(const BuildKey& key) const {
    return package_dir(key.package) / "archives" / (fsutil::escape_key(key.str()) + ".tar");
  }

  std::optional<PackageMetadata> load(const PackageId& id) const {
    auto text = fsutil::read_file(metadata_path(id));
    if (!text) return std::nullopt;
    return decode(*text, metadata_path(id));
  }

  DbSnapshot snapshot() const {
    DbSnapshot out;
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(root_, ec)) return out;
    for (const auto& cat : fs::directory_iterator(root_)) {
      if (!cat.is_directory() || cat.path().filename().string().starts_with('.')) continue;
      for (const auto& pkg : fs::directory_iterator(cat.path())) {
        auto file = pkg.path() / "metadata.json";
        auto text = fsutil::read_file(file);
        if (!text) continue;
        auto meta = decode(*text, file);
        out.emplace(meta.name, std::move(meta));
      }
    }
    return out;
  }

  /// Fetches the manifest and every category document, then merges them into
  /// the tree. Remote wins for description and versions; install state is
  /// kept. Nothing is written unless the manifest could be fetched.
  SyncReport sync_from_store(RemoteStore& store) {
    auto manifest_text = store.fetch(manifest_path());
    if (!manifest_text) throw Error(Errc::store_unreachable, "store has no manifest.txt");
    auto manifest = parse_manifest(*manifest_text);

    SyncReport report;
    std::vector<std::pair<std::string, std::map<std::string, PackageMetadata>>> fetched;
    for (const auto& category : manifest.categories) {
      auto text = store.fetch(category_path(category));
      if (!text) {
        report.skipped.emplace_back(category, "category document not found");
        continue;
      }
      try {
        fetched.emplace_back(category, parse_category_document(category, *text));
      } catch (const Error& e) {
        report.skipped.emplace_back(category, e.what());
      }
    }

    DbWriteLock lock(root_);
    for (auto& [category, packages] : fetched) {
      ++report.categories;
      std::filesystem::create_directories(root_ / category);
      for (auto& [name, remote] : packages) {
        auto path = metadata_path(remote.name);
        auto existing_text = fsutil::read_file(path);
        PackageMetadata merged = std::move(remote);
        if (existing_text) {
          auto local = decode(*existing_text, path);
          merged.installed = local.installed;
          merged.explicitly_installed = local.explicitly_installed;
          merged.required_by = local.required_by;
          merged.files = local.files;
          if (local.installed && !merged.versions.contains(*local.installed)) {
            merged.versions.emplace(*local.installed, local.versions.at(*local.installed));
          }
        }
        auto bytes = dump_document(metadata_to_json(merged));
        if (!existing_text) {
          ++report.added;
        } else if (*existing_text == bytes) {
          ++report.unchanged;
          continue;
        } else {
          ++report.updated;
        }
        fsutil::write_file_atomic(path, bytes);
      }
    }
    return report;
  }

  /// Case-insensitive substring match on "category/name", sorted by name.
  std::vector<SearchResult> search(std::string_view key) const {
    auto lower = [](std::string s) {
      std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
      return s;
    };
    const auto needle = lower(std::string(key));
    std::vector<SearchResult> out;
    for (const auto& [id, meta] : snapshot()) {
      if (lower(id.str()).find(needle) == std::string::npos) continue;
      out.push_back(SearchResult{id, meta.known_versions(), meta.installed_version(), meta.description});
    }
    return out;
  }

  /// Marks `package` installed at `version` and registers it in the
  /// required_by list of each of `deps`. A repeated call replaces the
  /// previous dependency registration, so it is idempotent.
  void record_install(const PackageId& package, const Version& version, bool explicitly,
                      const std::vector<PackageId>& deps, const std::vector<std::string>& files) {
    DbWriteLock lock(root_);
    auto meta = load(package);
    if (!meta) throw Error(Errc::unknown_package, package.str());
    if (!meta->versions.contains(version.str())) {
      throw Error(Errc::unknown_version, package.str() + "-" + version.str());
    }
    std::vector<PackageMetadata> dep_meta;
    for (const auto& dep : deps) {
      if (dep == package) continue;
      if (std::any_of(dep_meta.begin(), dep_meta.end(), [&](const auto& m) { return m.name == dep; })) continue;
      auto m = load(dep);
      if (!m) throw Error(Errc::unknown_package, dep.str() + " (dependency of " + package.str() + ")");
      dep_meta.push_back(std::move(*m));
    }

    unregister_dependent(package);
    meta->installed = version.str();
    meta->explicitly_installed = explicitly;
    meta->files = files;
    save(*meta);
    for (auto& m : dep_meta) {
      auto fresh = load(m.name);
      if (std::find(fresh->required_by.begin(), fresh->required_by.end(), package) == fresh->required_by.end()) {
        fresh->required_by.push_back(package);
        save(*fresh);
      }
    }
  }

  void record_removal(const PackageId& package) {
    DbWriteLock lock(root_);
    auto meta = load(package);
    if (!meta || !meta->is_installed()) throw Error(Errc::not_installed, package.str());
    meta->installed.reset();
    meta->explicitly_installed = false;
    meta->files.clear();
    save(*meta);
    unregister_dependent(package);
  }

  std::optional<std::string> archive_cache_get(const BuildKey& key) const {
    return fsutil::read_file(archive_path(key));
  }

  void archive_cache_put(const BuildKey& key, std::string_view bytes) {
    fsutil::write_file_atomic(archive_path(key), bytes);
  }

 private:
  static PackageMetadata decode(const std::string& text, const std::filesystem::path& path) {
    try {
      return metadata_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::malformed_document, path.string() + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what());
    }
  }

  void save(const PackageMetadata& meta) {
    fsutil::write_file_atomic(metadata_path(meta.name), dump_document(metadata_to_json(meta)));
  }

  // Removes `package` from every required_by list in the tree.
  void unregister_dependent(const PackageId& package) {
    for (auto& [id, meta] : snapshot()) {
      auto it = std::find(meta.required_by.begin(), meta.required_by.end(), package);
      if (it == meta.required_by.end()) continue;
      meta.required_by.erase(it);
      save(meta);
    }
  }

  std::filesystem::path root_;
};

}  // namespace pacloud

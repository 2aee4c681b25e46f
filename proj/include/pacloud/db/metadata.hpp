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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

struct VersionEntry {
  /// Runtime dependency strings, one per top-level element of RDEPEND.
  std::vector<std::string> dependencies;

  friend bool operator==(const VersionEntry&, const VersionEntry&) = default;
};

/// Per-package document of the local database. `installed`, `explicitly_installed`,
/// `required_by` and `files` are local-only: the store never sends them.
struct PackageMetadata {
  PackageId name;
  std::string description;
  std::map<std::string, VersionEntry> versions;

  std::optional<std::string> installed;
  bool explicitly_installed = false;
  std::vector<PackageId> required_by;
  std::vector<std::string> files;

  bool is_installed() const { return installed.has_value(); }

  /// Known versions in ascending order.
  std::vector<Version> known_versions() const {
    std::vector<Version> out;
    out.reserve(versions.size());
    for (const auto& [text, entry] : versions) out.push_back(parse_version(text));
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Version> installed_version() const {
    if (!installed) return std::nullopt;
    return parse_version(*installed);
  }

  friend bool operator==(const PackageMetadata&, const PackageMetadata&) = default;
};

enum class MetadataFields { remote_only, all };

inline nlohmann::json metadata_to_json(const PackageMetadata& m, MetadataFields fields = MetadataFields::all) {
  nlohmann::json doc;
  doc["name"] = m.name.str();
  doc["description"] = m.description;
  nlohmann::json versions = nlohmann::json::object();
  for (const auto& [v, entry] : m.versions) versions[v] = {{"dependencies", entry.dependencies}};
  doc["versions"] = std::move(versions);
  if (fields == MetadataFields::remote_only) return doc;

  doc["explicit"] = m.is_installed() && m.explicitly_installed;
  nlohmann::json required = nlohmann::json::array();
  for (const auto& id : m.required_by) required.push_back(id.str());
  doc["required_by"] = std::move(required);
  if (m.installed) {
    doc["installed"] = *m.installed;
    doc["files"] = m.files;
  }
  return doc;
}

/// Validates and decodes a metadata document. Throws Errc::malformed_document.
inline PackageMetadata metadata_from_json(const nlohmann::json& doc) {
  auto fail = [](const std::string& why) { return Error(Errc::malformed_document, why); };
  try {
    if (!doc.is_object()) throw fail("metadata must be an object");
    PackageMetadata m;
    m.name = parse_package_id(doc.at("name").get<std::string>());
    m.description = doc.value("description", std::string{});
    const auto& versions = doc.at("versions");
    if (!versions.is_object()) throw fail("\"versions\" must be an object");
    for (const auto& [key, value] : versions.items()) {
      if (parse_version(key).str() != key) throw fail("version key \"" + key + "\" is not canonical");
      VersionEntry entry;
      if (value.contains("dependencies")) entry.dependencies = value.at("dependencies").get<std::vector<std::string>>();
      m.versions.emplace(key, std::move(entry));
    }
    if (doc.contains("installed") && !doc.at("installed").is_null()) {
      m.installed = doc.at("installed").get<std::string>();
      if (!m.versions.contains(*m.installed)) throw fail("installed version " + *m.installed + " is not a known version");
      m.explicitly_installed = doc.value("explicit", false);
      if (doc.contains("files")) m.files = doc.at("files").get<std::vector<std::string>>();
    }
    if (doc.contains("required_by")) {
      for (const auto& entry : doc.at("required_by")) {
        auto id = parse_package_id(entry.get<std::string>());
        if (std::find(m.required_by.begin(), m.required_by.end(), id) != m.required_by.end()) {
          throw fail("duplicate required_by entry " + id.str());
        }
        m.required_by.push_back(std::move(id));
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::malformed_document) throw;
    throw fail(e.what());
  }
}

inline std::string dump_document(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace pacloud

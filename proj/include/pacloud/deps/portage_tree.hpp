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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pacloud/core/package.hpp"
#include "pacloud/db/local_db.hpp"
#include "pacloud/db/metadata.hpp"
#include "pacloud/deps/ebuild.hpp"
#include "pacloud/error.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud {

struct TranslationReport {
  std::size_t categories = 0;
  std::size_t packages = 0;
  std::size_t ebuilds = 0;
  /// (ebuild path, reason) for ebuilds that could not be translated.
  std::vector<std::pair<std::string, std::string>> skipped;
};

/// Reads <tree>/<category>/<name>/<name>-<version>.ebuild files.
/// Directories whose name is not a valid category are skipped. Without a
/// report, an ebuild that cannot be read is an error; with one, it is left
/// out and listed in report->skipped.
inline std::map<std::string, std::vector<PackageMetadata>> read_portage_tree(const std::filesystem::path& tree,
                                                                              TranslationReport* report = nullptr) {
  namespace fs = std::filesystem;
  std::map<std::string, std::vector<PackageMetadata>> out;
  std::error_code ec;
  if (!fs::is_directory(tree, ec)) throw Error(Errc::io_error, tree.string() + " is not a directory");

  std::vector<fs::path> categories;
  for (const auto& e : fs::directory_iterator(tree)) {
    if (e.is_directory() && is_valid_category(e.path().filename().string())) categories.push_back(e.path());
  }
  std::sort(categories.begin(), categories.end());
  for (const auto& cat_dir : categories) {
    const auto category = cat_dir.filename().string();
    std::vector<fs::path> packages;
    for (const auto& e : fs::directory_iterator(cat_dir)) {
      if (e.is_directory()) packages.push_back(e.path());
    }
    std::sort(packages.begin(), packages.end());
    for (const auto& pkg_dir : packages) {
      const PackageId id(category, pkg_dir.filename().string());
      std::vector<std::pair<Version, EbuildInfo>> entries;
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(pkg_dir)) {
        if (e.path().extension() == ".ebuild") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& path : files) {
        try {
          const auto stem = path.stem().string();
          if (!stem.starts_with(id.name + "-")) {
            throw Error(Errc::malformed_version, "file name does not start with " + id.name + "-");
          }
          const auto pv = stem.substr(id.name.size() + 1);
          auto version = parse_version(pv);
          auto info = parse_ebuild(*fsutil::read_file(path), id.name, pv);
          // dependency strings must parse too
          parse_dep_string(info.rdepend_raw);
          entries.emplace_back(version, std::move(info));
        } catch (const Error& err) {
          if (!report) throw Error(err.code(), path.string() + ": " + err.what());
          report->skipped.emplace_back(path.string(), err.what());
        }
      }
      if (entries.empty()) continue;
      std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (report) report->ebuilds += entries.size();
      out[category].push_back(metadata_from_ebuilds(id, entries));
    }
  }
  if (report) {
    report->categories = out.size();
    for (const auto& [_, v] : out) report->packages += v.size();
  }
  return out;
}

/// Writes manifest.txt and one <category>.json per category into `store`.
inline TranslationReport translate_portage_tree(const std::filesystem::path& tree, const std::filesystem::path& store) {
  TranslationReport report;
  auto categories = read_portage_tree(tree, &report);
  Manifest manifest;
  for (const auto& [category, packages] : categories) {
    manifest.categories.push_back(category);
    fsutil::write_file_atomic(store / category_path(category), render_category_document(packages));
  }
  fsutil::write_file_atomic(store / manifest_path(), render_manifest(manifest));
  return report;
}

}  // namespace pacloud

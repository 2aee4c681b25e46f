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

// Generators and oracles shared by the property tests and the acceptance
// binary.
#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pacloud/core/atom.hpp"
#include "pacloud/db/local_db.hpp"
#include "pacloud/db/metadata.hpp"
#include "pacloud/db/store.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/deps/dep_expr.hpp"
#include "pacloud/util/fs.hpp"

namespace pacloud::testing {

inline Version random_version(std::mt19937& rng) {
  Version v;
  v.components.clear();
  std::uniform_int_distribution<int> len(1, 3), comp(0, 3), coin(0, 3), letter(0, 2), rev(0, 2);
  for (int i = 0, n = len(rng); i < n; ++i) v.components.push_back(static_cast<std::uint64_t>(comp(rng)));
  if (coin(rng) == 0) v.letter = static_cast<char>('a' + letter(rng));
  v.revision = static_cast<std::uint64_t>(rev(rng));
  return v;
}

inline const std::vector<std::string>& tree_flags() {
  static const std::vector<std::string> flags{"f0", "f1", "f2", "f3", "f4", "f5"};
  return flags;
}

/// Random dependency tree of at most `depth` levels below the root, over
/// the six flags of tree_flags(). Conditionals are never empty.
class TreeGenerator {
 public:
  explicit TreeGenerator(unsigned seed) : rng_(seed) {}

  DependencyExpr root(int depth = 4) {
    std::vector<DependencyExpr> children;
    for (int n = pick(0, 4); n > 0; --n) children.push_back(node(depth));
    return make_group(std::move(children));
  }

  std::mt19937& rng() { return rng_; }

 private:
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  DependencyExpr atom() {
    return make_atom_expr(DependencyAtom{Specifier::any, PackageId("cat", "p" + std::to_string(next_++)), std::nullopt});
  }

  DependencyExpr node(int depth) {
    if (depth <= 1 || pick(0, 2) == 0) return atom();
    std::vector<DependencyExpr> children;
    const bool conditional = pick(0, 4) != 0;
    for (int n = pick(conditional ? 1 : 0, 3); n > 0; --n) children.push_back(node(depth - 1));
    if (!conditional) return make_group(std::move(children));
    return make_conditional(tree_flags()[static_cast<std::size_t>(pick(0, 5))], pick(0, 3) == 0, std::move(children));
  }

  std::mt19937 rng_;
  int next_ = 0;
};

struct GuardedAtom {
  DependencyAtom atom;
  std::vector<std::pair<std::string, bool>> path;  // (flag, negated) from root to leaf
};

inline void collect_guarded(const DependencyExpr& e, std::vector<std::pair<std::string, bool>>& path,
                            std::vector<GuardedAtom>& out) {
  if (e.is_atom()) {
    out.push_back({e.atom(), path});
    return;
  }
  const bool cond = e.is_conditional();
  if (cond) path.emplace_back(e.conditional().flag, e.conditional().negated);
  for (const auto& c : e.children()) collect_guarded(c, path, out);
  if (cond) path.pop_back();
}

/// Each atom is kept iff the conjunction of the conditions on its root path
/// holds under `enabled` (a bitmask over tree_flags()).
inline std::vector<DependencyAtom> path_condition_oracle(const DependencyExpr& e, unsigned enabled) {
  std::vector<GuardedAtom> all;
  std::vector<std::pair<std::string, bool>> path;
  collect_guarded(e, path, all);
  std::vector<DependencyAtom> out;
  for (const auto& g : all) {
    bool ok = true;
    for (const auto& [flag, negated] : g.path) {
      const auto index = static_cast<unsigned>(flag[1] - '0');
      const bool on = (enabled >> index) & 1u;
      ok = ok && (on != negated);
    }
    if (ok) out.push_back(g.atom);
  }
  return out;
}

inline UseFlagSet flags_from_mask(unsigned mask) {
  UseFlagSet set;
  for (std::size_t i = 0; i < tree_flags().size(); ++i) {
    if ((mask >> i) & 1u) set.insert(tree_flags()[i]);
  }
  return set;
}

/// Remote metadata for `id` with versions given as (version, dependency
/// strings) pairs.
inline PackageMetadata make_meta(const std::string& id, const std::string& description,
                                 const std::vector<std::pair<std::string, std::vector<std::string>>>& versions) {
  PackageMetadata m;
  m.name = parse_package_id(id);
  m.description = description;
  for (const auto& [v, deps] : versions) m.versions[parse_version(v).str()] = VersionEntry{deps};
  return m;
}

/// Writes manifest.txt and the category documents for `packages`.
template <typename Store>
void publish(Store& store, const std::vector<PackageMetadata>& packages) {
  std::map<std::string, std::vector<PackageMetadata>> by_category;
  for (const auto& p : packages) by_category[p.name.category].push_back(p);
  Manifest manifest;
  for (const auto& [category, list] : by_category) {
    manifest.categories.push_back(category);
    store.put(category_path(category), render_category_document(list));
  }
  store.put(manifest_path(), render_manifest(manifest));
}

/// Every regular file under `root` (relative path -> bytes), skipping the
/// names in `skip` at any depth.
inline std::map<std::string, std::string> tree_contents(const std::filesystem::path& root,
                                                        const std::vector<std::string>& skip = {}) {
  std::map<std::string, std::string> out;
  std::error_code ec;
  if (!std::filesystem::exists(root, ec)) return out;
  for (auto it = std::filesystem::recursive_directory_iterator(root); it != std::filesystem::recursive_directory_iterator();
       ++it) {
    const auto name = it->path().filename().string();
    if (std::find(skip.begin(), skip.end(), name) != skip.end()) {
      if (it->is_directory()) it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    out[std::filesystem::relative(it->path(), root).string()] = *fsutil::read_file(it->path());
  }
  return out;
}

/// Every directory under `root`, relative.
inline std::set<std::string> tree_directories(const std::filesystem::path& root) {
  std::set<std::string> out;
  std::error_code ec;
  if (!std::filesystem::exists(root, ec)) return out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_directory()) out.insert(std::filesystem::relative(e.path(), root).string());
  }
  return out;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "pacloud") {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / (tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& sub) const { return path_ / sub; }

 private:
  std::filesystem::path path_;
};

}  // namespace pacloud::testing

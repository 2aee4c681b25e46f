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
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "pacloud/core/atom.hpp"
#include "pacloud/core/package.hpp"
#include "pacloud/core/version.hpp"
#include "pacloud/db/local_db.hpp"
#include "pacloud/deps/dep_expr.hpp"
#include "pacloud/error.hpp"

namespace pacloud {

struct PlanStep {
  PackageId package;
  Version version;
  /// Runtime dependencies of this step under the active USE flags, in order
  /// of first appearance. Includes already-installed packages.
  std::vector<PackageId> dependencies;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct InstallPlan {
  std::vector<PlanStep> steps;
  std::set<PackageId> skipped_installed;

  friend bool operator==(const InstallPlan&, const InstallPlan&) = default;
};

/// Evaluated runtime dependencies of one version of a package.
inline std::vector<DependencyAtom> runtime_dependencies(const PackageMetadata& meta, const Version& version,
                                                        const UseFlagSet& flags) {
  std::vector<DependencyAtom> out;
  for (const auto& text : meta.versions.at(version.str()).dependencies) {
    auto atoms = eval_use_conditionals(parse_dep_string(text), flags);
    out.insert(out.end(), atoms.begin(), atoms.end());
  }
  return out;
}

namespace detail {

class ClosureBuilder {
 public:
  ClosureBuilder(const DbSnapshot& db, const UseFlagSet& flags,
                 const std::map<PackageId, std::vector<DependencyAtom>>& seeded)
      : db_(db), flags_(flags), constraints_(seeded) {}

  /// Returns the atom that forced a different version for an already chosen
  /// package, or nullopt once the closure is consistent.
  std::optional<DependencyAtom> run(const std::vector<DependencyAtom>& targets) {
    for (const auto& t : targets) {
      if (auto forced = visit(t)) return forced;
    }
    return std::nullopt;
  }

  InstallPlan plan() const {
    InstallPlan out;
    std::vector<PackageId> nodes;
    for (const auto& [id, choice] : chosen_) {
      if (choice.reused) out.skipped_installed.insert(id);
      else nodes.push_back(id);
    }
    for (const auto& id : topological_order(nodes)) {
      const auto& choice = chosen_.at(id);
      out.steps.push_back(PlanStep{id, choice.version, choice.deps});
    }
    return out;
  }

 private:
  struct Choice {
    Version version;
    bool reused = false;
    std::vector<PackageId> deps;
  };

  std::optional<DependencyAtom> visit(const DependencyAtom& atom) {
    auto it = db_.find(atom.package);
    if (it == db_.end()) throw Error(Errc::missing_package, atom.package.str() + " (from " + atom.str() + ")");
    const PackageMetadata& meta = it->second;

    auto& cons = constraints_[atom.package];
    if (std::find(cons.begin(), cons.end(), atom) == cons.end()) cons.push_back(atom);

    if (auto found = chosen_.find(atom.package); found != chosen_.end()) {
      if (atom_matches(atom, found->second.version)) return std::nullopt;
      (void)pick(meta, cons);  // throws when no version satisfies every atom
      return atom;
    }

    auto [version, reused] = pick(meta, cons);
    auto& choice = chosen_[atom.package];
    choice.version = version;
    choice.reused = reused;
    if (reused) return std::nullopt;

    for (const auto& dep : runtime_dependencies(meta, version, flags_)) {
      auto& deps = chosen_[atom.package].deps;
      if (std::find(deps.begin(), deps.end(), dep.package) == deps.end()) deps.push_back(dep.package);
      if (auto forced = visit(dep)) return forced;
    }
    return std::nullopt;
  }

  static std::pair<Version, bool> pick(const PackageMetadata& meta, const std::vector<DependencyAtom>& cons) {
    auto satisfies_all = [&](const Version& v) {
      return std::all_of(cons.begin(), cons.end(), [&](const auto& a) { return atom_matches(a, v); });
    };
    if (auto installed = meta.installed_version(); installed && satisfies_all(*installed)) {
      return {*installed, true};
    }
    const auto available = meta.known_versions();
    std::optional<Version> best;
    for (const auto& v : available) {
      if (satisfies_all(v)) best = v;  // ascending, so the last match is the maximum
    }
    if (best) return {*best, false};

    std::string listing;
    for (const auto& v : available) listing += (listing.empty() ? "" : ", ") + v.str();
    for (const auto& a : cons) {
      if (!select_best_version(a, available)) {
        throw Error(Errc::no_matching_version, a.str() + " (available: " + listing + ")");
      }
    }
    std::string atoms;
    for (const auto& a : cons) atoms += (atoms.empty() ? "" : ", ") + a.str();
    throw Error(Errc::conflicting_atoms, "no version of " + meta.name.str() + " satisfies all of " + atoms +
                                             " (available: " + listing + ")");
  }

  // Dependencies first. Strongly connected components are emitted as a unit
  // with members in ascending name order; ties between ready components go
  // to the one with the smallest member name.
  std::vector<PackageId> topological_order(const std::vector<PackageId>& nodes) const {
    std::map<PackageId, std::size_t> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = i;
    std::vector<std::vector<std::size_t>> edges(nodes.size());  // node -> its dependencies
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (const auto& d : chosen_.at(nodes[i]).deps) {
        if (auto it = index.find(d); it != index.end() && it->second != i) edges[i].push_back(it->second);
      }
    }

    // Tarjan's algorithm, iterative over an explicit stack.
    const std::size_t n = nodes.size();
    std::vector<int> comp(n, -1), low(n, 0), order(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0, ncomp = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (order[root] != -1) continue;
      std::vector<std::pair<std::size_t, std::size_t>> work{{root, 0}};
      order[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!work.empty()) {
        auto& [v, next] = work.back();
        if (next < edges[v].size()) {
          std::size_t w = edges[v][next++];
          if (order[w] == -1) {
            order[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            work.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], order[w]);
          }
          continue;
        }
        if (low[v] == order[v]) {
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
          } while (w != v);
          ++ncomp;
        }
        std::size_t finished = v;
        work.pop_back();
        if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[finished]);
      }
    }

    std::vector<std::vector<PackageId>> members(ncomp);
    for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(nodes[i]);
    for (auto& m : members) std::sort(m.begin(), m.end());
    std::vector<std::set<int>> needs(ncomp), needed_by(ncomp);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j : edges[i]) {
        if (comp[i] != comp[j]) {
          needs[comp[i]].insert(comp[j]);
          needed_by[comp[j]].insert(comp[i]);
        }
      }
    }
    auto later = [&](int a, int b) { return members[b].front() < members[a].front(); };
    std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
    std::vector<std::size_t> pending(ncomp);
    for (int c = 0; c < ncomp; ++c) {
      pending[c] = needs[c].size();
      if (pending[c] == 0) ready.push(c);
    }
    std::vector<PackageId> out;
    while (!ready.empty()) {
      int c = ready.top();
      ready.pop();
      out.insert(out.end(), members[c].begin(), members[c].end());
      for (int d : needed_by[c]) {
        if (--pending[d] == 0) ready.push(d);
      }
    }
    return out;
  }

  const DbSnapshot& db_;
  const UseFlagSet& flags_;
  std::map<PackageId, std::vector<DependencyAtom>> constraints_;
  std::map<PackageId, Choice> chosen_;
};

}  // namespace detail

/// Expands the runtime dependency closure of `targets` and orders it so
/// every package comes after its dependencies. Installed packages whose
/// version satisfies every atom naming them are reused and listed in
/// `skipped_installed`. All atoms naming one package must agree on a version.
inline InstallPlan resolve_runtime_closure(const std::vector<DependencyAtom>& targets, const DbSnapshot& db,
                                           const UseFlagSet& flags) {
  std::map<PackageId, std::vector<DependencyAtom>> seeded;
  while (true) {
    detail::ClosureBuilder builder(db, flags, seeded);
    auto forced = builder.run(targets);
    if (!forced) return builder.plan();
    // Restart with the constraint known up front; constraints only grow, so
    // this terminates.
    seeded[forced->package].push_back(*forced);
  }
}

/// Packages to delete when removing `roots`: the roots plus every
/// dependency-installed package whose dependents are all being removed.
/// Dependents come before their dependencies.
inline std::vector<PackageId> compute_orphans(const DbSnapshot& db, const std::set<PackageId>& roots) {
  for (const auto& r : roots) {
    auto it = db.find(r);
    if (it == db.end() || !it->second.is_installed()) throw Error(Errc::not_installed, r.str());
  }
  std::set<PackageId> removal = roots;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [id, meta] : db) {
      if (removal.contains(id) || !meta.is_installed() || meta.explicitly_installed || meta.required_by.empty()) {
        continue;
      }
      bool orphaned = std::all_of(meta.required_by.begin(), meta.required_by.end(),
                                  [&](const PackageId& dependent) { return removal.contains(dependent); });
      if (orphaned) {
        removal.insert(id);
        grew = true;
      }
    }
  }
  for (const auto& r : roots) {
    for (const auto& dependent : db.at(r).required_by) {
      if (!removal.contains(dependent)) {
        throw Error(Errc::still_required, r.str() + " is required by " + dependent.str());
      }
    }
  }

  // Repeatedly emit the smallest package none of whose remaining dependents
  // is still pending; cycles fall back to the smallest pending package.
  std::vector<PackageId> out;
  std::set<PackageId> pending = removal;
  while (!pending.empty()) {
    auto ready = std::find_if(pending.begin(), pending.end(), [&](const PackageId& id) {
      const auto& req = db.at(id).required_by;
      return std::none_of(req.begin(), req.end(), [&](const PackageId& d) { return d != id && pending.contains(d); });
    });
    if (ready == pending.end()) ready = pending.begin();
    out.push_back(*ready);
    pending.erase(ready);
  }
  return out;
}

}  // namespace pacloud

// Copyright 2026 The depsolve Authors
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

#include "depsolve/checker.hpp"

#include <algorithm>

namespace depsolve::checker {

std::vector<std::string> CheckReport::lines() const {
  std::vector<std::string> out;
  for (const Violation& v : consistency) out.push_back(to_string(v));
  out.insert(out.end(), request_violations.begin(), request_violations.end());
  out.insert(out.end(), keep_violations.begin(), keep_violations.end());
  return out;
}

CheckReport check(const Universe& u, const Request& r, const Solution& s) {
  CheckReport report;
  report.consistency = u.consistency_violations(s.installed);

  for (const VpkgAtom& a : r.install) {
    if (!u.atom_satisfied(a, s.installed)) {
      report.request_violations.push_back("install not satisfied: " + to_string(a));
    }
  }
  for (const VpkgAtom& a : r.remove) {
    for (const PackageId& q : u.providers(a)) {
      if (s.installed.count(q)) {
        report.request_violations.push_back("remove not satisfied: " +
                                            to_string(a) + " still provided by " +
                                            to_string(q));
      }
    }
  }
  for (const VpkgAtom& a : r.upgrade) {
    // Exactly one version of the name, no older than any initially
    // installed version, and satisfying the atom's constraint.
    std::vector<Version> installed_versions;
    for (const PackageId& id : s.installed) {
      if (id.name == a.name) installed_versions.push_back(id.version);
    }
    if (installed_versions.size() != 1) {
      report.request_violations.push_back(
          "upgrade " + to_string(a) + ": expected exactly one version of " +
          a.name + ", found " + std::to_string(installed_versions.size()));
      continue;
    }
    Version v = installed_versions.front();
    if (a.constraint && !rel_op_holds(a.constraint->op, v, a.constraint->version)) {
      report.request_violations.push_back("upgrade " + to_string(a) +
                                          ": installed version " +
                                          std::to_string(v) + " misses constraint");
    }
    for (const PackageId& init : u.initial_installation()) {
      if (init.name == a.name && init.version > v) {
        report.request_violations.push_back(
            "upgrade " + to_string(a) + ": version " + std::to_string(v) +
            " is a downgrade from " + std::to_string(init.version));
        break;
      }
    }
  }

  for (const PackageStanza& p : u.stanzas()) {
    if (!p.installed) continue;
    switch (p.keep) {
      case KeepLevel::None:
        break;
      case KeepLevel::Version:
        if (!s.installed.count(p.id)) {
          report.keep_violations.push_back("keep version violated: " +
                                           to_string(p.id));
        }
        break;
      case KeepLevel::Package: {
        bool any = std::any_of(
            s.installed.begin(), s.installed.end(),
            [&](const PackageId& id) { return id.name == p.id.name; });
        if (!any) {
          report.keep_violations.push_back("keep package violated: " + p.id.name);
        }
        break;
      }
      case KeepLevel::Feature:
        for (const ProvidedFeature& f : p.provides) {
          VpkgAtom atom{f.name,
                        f.version ? std::optional<VersionConstraint>(
                                        VersionConstraint{RelOp::Eq, *f.version})
                                  : std::nullopt};
          if (!u.atom_satisfied(atom, s.installed)) {
            report.keep_violations.push_back("keep feature violated: " + f.name);
          }
        }
        break;
    }
  }
  return report;
}

}  // namespace depsolve::checker

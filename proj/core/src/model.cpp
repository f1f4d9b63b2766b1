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

#include "depsolve/model.hpp"

#include <algorithm>
#include <cctype>

namespace depsolve {

bool valid_package_name(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalnum(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '+' &&
        c != '-') {
      return false;
    }
  }
  return true;
}

std::string to_string(const PackageId& id) {
  return id.name + " " + std::to_string(id.version);
}

bool rel_op_holds(RelOp op, Version lhs, Version rhs) {
  switch (op) {
    case RelOp::Eq: return lhs == rhs;
    case RelOp::Neq: return lhs != rhs;
    case RelOp::Geq: return lhs >= rhs;
    case RelOp::Gt: return lhs > rhs;
    case RelOp::Leq: return lhs <= rhs;
    case RelOp::Lt: return lhs < rhs;
  }
  return false;
}

std::string to_string(RelOp op) {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Neq: return "!=";
    case RelOp::Geq: return ">=";
    case RelOp::Gt: return ">";
    case RelOp::Leq: return "<=";
    case RelOp::Lt: return "<";
  }
  return "?";
}

std::string to_string(const VpkgAtom& atom) {
  if (!atom.constraint) return atom.name;
  return atom.name + " " + to_string(atom.constraint->op) + " " +
         std::to_string(atom.constraint->version);
}

bool VpkgFormula::is_false() const {
  return std::any_of(conjuncts.begin(), conjuncts.end(),
                     [](const Disjunct& d) { return d.empty(); });
}

DuplicatePackage::DuplicatePackage(const PackageId& i)
    : std::runtime_error("duplicate package: " + to_string(i)), id(i) {}

UnknownPackage::UnknownPackage(const PackageId& i)
    : std::runtime_error("unknown package: " + to_string(i)), id(i) {}

std::string to_string(const Violation& v) {
  if (v.kind == Violation::Kind::Conflict) {
    return "conflict: " + to_string(v.pkg) + " vs " + to_string(v.other);
  }
  std::string out = "unsat-dependency: " + to_string(v.pkg) + " needs";
  if (v.disjunct.empty()) {
    out += " false!";
  } else {
    for (std::size_t i = 0; i < v.disjunct.size(); ++i) {
      out += (i ? " | " : " ") + to_string(v.disjunct[i]);
    }
  }
  return out;
}

Universe Universe::build(std::vector<PackageStanza> stanzas) {
  Universe u;
  u.stanzas_ = std::move(stanzas);
  for (std::size_t i = 0; i < u.stanzas_.size(); ++i) {
    const PackageStanza& p = u.stanzas_[i];
    auto [it, fresh] = u.id_index_.emplace(p.id, i);
    if (!fresh) throw DuplicatePackage(p.id);
    u.name_index_[p.id.name].push_back(p.id.version);
    for (const ProvidedFeature& f : p.provides) {
      u.feature_index_[f.name].emplace_back(p.id, f.version);
    }
  }
  for (auto& [name, versions] : u.name_index_) {
    std::sort(versions.begin(), versions.end());
  }
  return u;
}

const PackageStanza* Universe::find(const PackageId& id) const {
  auto it = id_index_.find(id);
  return it == id_index_.end() ? nullptr : &stanzas_[it->second];
}

const std::vector<Version>* Universe::versions_of(const PackageName& name) const {
  auto it = name_index_.find(name);
  return it == name_index_.end() ? nullptr : &it->second;
}

namespace {
bool constraint_accepts(const std::optional<VersionConstraint>& c, Version v) {
  return !c || rel_op_holds(c->op, v, c->version);
}
}  // namespace

std::vector<PackageId> Universe::providers(const VpkgAtom& atom) const {
  std::vector<PackageId> out;
  if (const auto* versions = versions_of(atom.name)) {
    for (Version v : *versions) {
      if (constraint_accepts(atom.constraint, v)) out.push_back({atom.name, v});
    }
  }
  if (auto it = feature_index_.find(atom.name); it != feature_index_.end()) {
    for (const auto& [provider, fver] : it->second) {
      bool match = fver ? constraint_accepts(atom.constraint, *fver)
                        : !atom.constraint;
      if (match) out.push_back(provider);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Universe::atom_satisfied(const VpkgAtom& atom,
                              const std::set<PackageId>& s) const {
  for (const PackageId& p : providers(atom)) {
    if (s.count(p)) return true;
  }
  return false;
}

std::set<PackageId> Universe::initial_installation() const {
  std::set<PackageId> out;
  for (const PackageStanza& p : stanzas_) {
    if (p.installed) out.insert(p.id);
  }
  return out;
}

std::vector<Violation> Universe::consistency_violations(
    const std::set<PackageId>& s) const {
  for (const PackageId& id : s) {
    if (!contains(id)) throw UnknownPackage(id);
  }
  std::vector<Violation> out;
  for (const PackageId& id : s) {
    const PackageStanza& p = *find(id);
    for (const Disjunct& d : p.depends.conjuncts) {
      bool sat = std::any_of(d.begin(), d.end(), [&](const VpkgAtom& a) {
        return atom_satisfied(a, s);
      });
      if (!sat) {
        out.push_back({Violation::Kind::UnsatDependency, id, d, {}});
      }
    }
    for (const VpkgAtom& c : p.conflicts) {
      for (const PackageId& q : providers(c)) {
        if (q != id && s.count(q)) {
          out.push_back({Violation::Kind::Conflict, id, {}, q});
        }
      }
    }
  }
  return out;
}

}  // namespace depsolve

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

#ifndef DEPSOLVE_MODEL_HPP
#define DEPSOLVE_MODEL_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace depsolve {

/// CUDF versions are positive integers; concrete versioning schemes are
/// mapped to this order by adapters.
using Version = std::int64_t;

using PackageName = std::string;

/// True iff `s` is a well-formed package name: nonempty, over
/// [a-zA-Z0-9.+-], first character alphanumeric.
bool valid_package_name(const std::string& s);

struct PackageId {
  PackageName name;
  Version version = 1;

  auto operator<=>(const PackageId&) const = default;
};

std::string to_string(const PackageId& id);

enum class RelOp { Eq, Neq, Geq, Gt, Leq, Lt };

bool rel_op_holds(RelOp op, Version lhs, Version rhs);
std::string to_string(RelOp op);

struct VersionConstraint {
  RelOp op = RelOp::Eq;
  Version version = 1;

  auto operator<=>(const VersionConstraint&) const = default;
};

/// A package-or-feature reference: bare name matches any version, a
/// constrained name matches versions accepted by the relation.
struct VpkgAtom {
  PackageName name;
  std::optional<VersionConstraint> constraint;

  auto operator<=>(const VpkgAtom&) const = default;
};

std::string to_string(const VpkgAtom& atom);

using Disjunct = std::vector<VpkgAtom>;

/// CNF-shaped dependency formula: a conjunction of disjunctions of atoms.
/// The empty conjunct list is TRUE; FALSE is canonically a single empty
/// disjunct (an unsatisfiable conjunct).
struct VpkgFormula {
  std::vector<Disjunct> conjuncts;

  static VpkgFormula truth() { return {}; }
  static VpkgFormula falsity() { return {{Disjunct{}}}; }

  bool is_true() const { return conjuncts.empty(); }
  bool is_false() const;

  auto operator<=>(const VpkgFormula&) const = default;
};

enum class KeepLevel { None, Version, Package, Feature };

struct ProvidedFeature {
  PackageName name;
  std::optional<Version> version;  // exact version only, never a relation

  auto operator<=>(const ProvidedFeature&) const = default;
};

struct PackageStanza {
  PackageId id;
  VpkgFormula depends = VpkgFormula::truth();
  std::vector<VpkgAtom> conflicts;
  std::vector<ProvidedFeature> provides;
  VpkgFormula recommends = VpkgFormula::truth();
  bool installed = false;
  KeepLevel keep = KeepLevel::None;
  /// Unknown CUDF fields, preserved verbatim in input order.
  std::vector<std::pair<std::string, std::string>> extras;
};

struct Request {
  std::vector<VpkgAtom> install;
  std::vector<VpkgAtom> remove;
  std::vector<VpkgAtom> upgrade;

  bool empty() const { return install.empty() && remove.empty() && upgrade.empty(); }
};

struct Solution {
  std::set<PackageId> installed;

  bool operator==(const Solution&) const = default;
};

class DuplicatePackage : public std::runtime_error {
 public:
  explicit DuplicatePackage(const PackageId& id);
  PackageId id;
};

class UnknownPackage : public std::runtime_error {
 public:
  explicit UnknownPackage(const PackageId& id);
  PackageId id;
};

struct Violation {
  enum class Kind { UnsatDependency, Conflict };
  Kind kind;
  PackageId pkg;
  Disjunct disjunct;  // UnsatDependency: the failed conjunct
  PackageId other;    // Conflict: the co-installed offender
};

std::string to_string(const Violation& v);

/// Immutable, indexed set of package stanzas. Safe to share across threads
/// once built.
class Universe {
 public:
  Universe() = default;

  /// Indexes the stanzas; throws DuplicatePackage on a repeated PackageId.
  static Universe build(std::vector<PackageStanza> stanzas);

  const std::vector<PackageStanza>& stanzas() const { return stanzas_; }
  std::size_t size() const { return stanzas_.size(); }

  const PackageStanza* find(const PackageId& id) const;
  bool contains(const PackageId& id) const { return find(id) != nullptr; }

  /// Sorted versions of `name` present as real packages (not features).
  const std::vector<Version>* versions_of(const PackageName& name) const;

  /// Every PackageId whose name or provides satisfies the atom. A
  /// versionless provide satisfies only constraint-free atoms; a versioned
  /// provide is compared by the atom's relation.
  std::vector<PackageId> providers(const VpkgAtom& atom) const;

  /// True iff some provider of `atom` is a member of `s`.
  bool atom_satisfied(const VpkgAtom& atom, const std::set<PackageId>& s) const;

  /// Ids of stanzas flagged installed.
  std::set<PackageId> initial_installation() const;

  /// One violation per unsatisfied dependency conjunct or conflicting
  /// co-installed pair. A stanza never conflicts with its own PackageId,
  /// including via its own provides. Throws UnknownPackage for ids
  /// outside the universe.
  std::vector<Violation> consistency_violations(const std::set<PackageId>& s) const;

  const std::map<PackageName, std::vector<Version>>& name_index() const {
    return name_index_;
  }

 private:
  std::vector<PackageStanza> stanzas_;
  std::map<PackageId, std::size_t> id_index_;
  std::map<PackageName, std::vector<Version>> name_index_;
  // feature name -> (provider, provided version or none)
  std::map<PackageName, std::vector<std::pair<PackageId, std::optional<Version>>>>
      feature_index_;
};

}  // namespace depsolve

#endif  // DEPSOLVE_MODEL_HPP

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

#ifndef DEPSOLVE_ENCODER_HPP
#define DEPSOLVE_ENCODER_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "depsolve/criteria.hpp"
#include "depsolve/model.hpp"
#include "depsolve/sat.hpp"

namespace depsolve::encoder {

using sat::Lit;
using Clause = std::vector<Lit>;
using ClauseSet = std::vector<Clause>;

/// Dense 1-based variable numbering: package variables first (ids sorted
/// by name, then version), auxiliary gadget variables strictly above.
class VarMap {
 public:
  explicit VarMap(const Universe& u);

  int var(const PackageId& id) const;
  /// Package behind a variable, or nullptr for auxiliaries.
  const PackageId* package_of(int var) const;
  int package_count() const { return static_cast<int>(by_var_.size()); }
  int var_count() const { return next_ - 1; }
  int new_aux() { return next_++; }

 private:
  std::vector<PackageId> by_var_;
  std::map<PackageId, int> to_var_;
  int next_ = 1;
};

/// Dependency and conflict clauses for every stanza: one clause per
/// depends conjunct over the providers of its atoms, one binary clause
/// per conflicting unordered pair (self-exempt by PackageId).
ClauseSet encode_universe(const Universe& u, const VarMap& vm);

/// Request clauses. An install atom with no providers yields the empty
/// clause (immediate unsatisfiability). Upgrade of a name forces exactly
/// one version, at least the maximum initially installed one.
ClauseSet encode_request(const Universe& u, VarMap& vm, const Request& r);

/// keep:version / keep:package / keep:feature clauses for installed
/// stanzas.
ClauseSet encode_keep(const Universe& u, const VarMap& vm);

struct ObjectiveLayer {
  /// (weight, literal) — the literal is true iff the counted condition
  /// holds, by two-sided defining clauses.
  std::vector<std::pair<std::int64_t, Lit>> terms;
  Criterion::Sense sense = Criterion::Sense::Minimize;
  ClauseSet defining_clauses;
};

/// Per-name auxiliary literals whose weighted true-sum equals
/// evaluate(c.measure, u, s) on the solution read off any total model.
ObjectiveLayer build_objective(const Universe& u, VarMap& vm, const Criterion& c);

/// Totalizer-style unary counter. outputs[k-1] <-> (number of true input
/// literals >= k), for k = 1..cap, via two-sided defining clauses.
struct Totalizer {
  std::vector<Lit> outputs;
  ClauseSet clauses;

  static Totalizer build(std::span<const Lit> lits, int cap, VarMap& vm);
};

/// Clauses satisfiable exactly by assignments with weighted true-sum
/// <= bound.
ClauseSet cardinality_leq(const std::vector<std::pair<std::int64_t, Lit>>& terms,
                          std::int64_t bound, VarMap& vm);

/// At-most-one over the given literals: pairwise below 8 literals,
/// sequential counter above.
ClauseSet at_most_one(std::span<const Lit> lits, VarMap& vm);

/// Reads the Solution off a total model.
Solution solution_of_model(const VarMap& vm, const sat::Result& model);

/// Debug dump in DIMACS CNF.
std::string to_dimacs(const ClauseSet& clauses, int num_vars);

}  // namespace depsolve::encoder

#endif  // DEPSOLVE_ENCODER_HPP

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

#ifndef DEPSOLVE_OPTIMIZER_HPP
#define DEPSOLVE_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "depsolve/criteria.hpp"
#include "depsolve/model.hpp"

namespace depsolve::optimizer {

struct Budget {
  /// Total conflict allowance across all solver calls; negative = unlimited.
  std::int64_t conflicts = 1000000;
};

struct SolveStats {
  std::int64_t conflicts = 0;
  std::int64_t decisions = 0;
  std::int64_t propagations = 0;
  int variables = 0;
  std::size_t clauses = 0;
};

/// Outcome of a lexicographic solve: a proven-optimal solution, a proven
/// no-solution, or budget exhaustion (carrying the best feasible solution
/// found so far, if any).
struct SolveResult {
  enum class Kind { Solution, NoSolution, Unknown };
  Kind kind = Kind::NoSolution;
  std::optional<Solution> solution;  // set for Solution; best-so-far for Unknown
  std::vector<std::int64_t> objective;  // componentwise evaluate() of `solution`
  SolveStats stats;
};

/// Complete, preference-aware solve: encodes the instance, then optimizes
/// each criterion in order by binary search over a unary counter, freezing
/// each layer's optimum before the next. Co-optimal ties are broken
/// deterministically by preferring, per name in lexicographic order, the
/// highest installable version.
SolveResult solve_upgrade(const Universe& u, const Request& r,
                          const CriteriaList& c, const Budget& budget = {});

}  // namespace depsolve::optimizer

#endif  // DEPSOLVE_OPTIMIZER_HPP

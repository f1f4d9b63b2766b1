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

#ifndef DEPSOLVE_SAT_HPP
#define DEPSOLVE_SAT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace depsolve::sat {

/// External literal: nonzero signed integer, variable index >= 1,
/// negative = negated (DIMACS convention).
using Lit = int;

enum class Status { Sat, Unsat, Unknown };

struct Result {
  Status status = Status::Unknown;
  /// model[v] for v in 1..nvars; index 0 unused. Valid when Sat.
  std::vector<bool> model;
  /// Subset of the assumptions sufficient for unsatisfiability. Valid
  /// when Unsat (empty when the formula is unsatisfiable on its own).
  std::vector<Lit> core;

  bool value(Lit l) const {
    return l > 0 ? model[static_cast<std::size_t>(l)]
                 : !model[static_cast<std::size_t>(-l)];
  }
};

/// Conflict-driven clause-learning solver: two watched literals,
/// decayed-activity branching, Luby restarts, activity-based learnt-clause
/// reduction, incremental solving under assumptions. One instance is
/// single-threaded; distinct instances are independent.
class Solver {
 public:
  Solver();
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  int new_var();
  void ensure_vars(int n);
  int num_vars() const { return static_cast<int>(activity_.size()); }

  /// Adds a clause (empty allowed: makes the formula unsatisfiable).
  /// Returns false if the formula is now conflicting at level zero.
  bool add_clause(std::vector<Lit> lits);

  bool ok() const { return ok_; }

  /// Value of a literal under the level-zero (forced) assignment:
  /// +1 true, -1 false, 0 unassigned.
  int fixed_value(Lit l) const;

  Result solve(std::span<const Lit> assumptions = {});
  Result solve(std::initializer_list<Lit> assumptions) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()));
  }

  /// Conflict budget for subsequent solve() calls; negative = unlimited.
  /// On exhaustion solve() returns Unknown.
  void set_conflict_budget(std::int64_t budget) { budget_ = budget; }

  /// Seeds the saved phase of a variable (the polarity tried first when
  /// branching). Overwritten by phase saving as solving proceeds.
  void set_polarity(int var, bool value) {
    // phase_ stores the sign bit of the internal literal: 0 = true first.
    phase_[static_cast<std::size_t>(var - 1)] = value ? 0 : 1;
  }

  std::int64_t conflicts() const { return stats_conflicts_; }
  std::int64_t decisions() const { return stats_decisions_; }
  std::int64_t propagations() const { return stats_propagations_; }
  std::size_t num_clauses() const { return n_original_; }

 private:
  struct Clause;
  struct Watcher;

  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffu;

  // Internal literal: 2*var + sign, var 0-based.
  static int ilit(Lit l) {
    int v = l > 0 ? l : -l;
    return 2 * (v - 1) + (l < 0 ? 1 : 0);
  }
  static Lit elit(int p) { return (p & 1) ? -(p / 2 + 1) : p / 2 + 1; }
  static int neg(int p) { return p ^ 1; }
  static int var_of(int p) { return p >> 1; }

  int value_of(int p) const;  // +1 true, -1 false, 0 unassigned
  void enqueue(int p, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<int>& learnt, int& out_level);
  void analyze_final(int p, std::vector<Lit>& out_core);
  bool literal_redundant(int p);
  void backtrack_to(int level);
  void bump_var(int v);
  void bump_clause(CRef c);
  void decay_var_activity();
  void decay_clause_activity();
  int pick_branch_var();
  void reduce_learnts();
  CRef alloc_clause(const std::vector<int>& lits, bool learnt);
  void attach_clause(CRef c);
  void detach_clause(CRef c);
  bool clause_locked(CRef c) const;

  // Heap keyed by activity, deterministic tie-break by variable index.
  void heap_insert(int v);
  void heap_update(int v);
  int heap_pop();
  bool heap_less(int a, int b) const;
  void heap_sift_up(std::size_t i);
  void heap_sift_down(std::size_t i);

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<CRef> learnts_;
  std::size_t n_original_ = 0;
  std::vector<std::vector<Watcher>> watches_;  // indexed by internal literal
  std::vector<signed char> assigns_;           // per var: 0 unset, 1 true, -1 false
  std::vector<signed char> phase_;             // saved polarity per var
  std::vector<int> level_;                     // per var
  std::vector<CRef> reason_;                   // per var
  std::vector<int> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  std::vector<int> heap_;      // binary heap of vars
  std::vector<int> heap_pos_;  // per var; -1 = absent
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<signed char> seen_;
  std::vector<int> analyze_stack_;
  std::vector<int> analyze_clear_;

  std::int64_t budget_ = -1;
  std::int64_t stats_conflicts_ = 0;
  std::int64_t stats_decisions_ = 0;
  std::int64_t stats_propagations_ = 0;
  double max_learnts_ = 0;
};

/// Parses DIMACS CNF (`p cnf V C`, zero-terminated clauses, `c` comments).
/// Throws std::runtime_error on malformed input.
struct DimacsProblem {
  int num_vars = 0;
  std::vector<std::vector<Lit>> clauses;
};
DimacsProblem parse_dimacs(const std::string& text);
std::string write_dimacs(int num_vars, const std::vector<std::vector<Lit>>& clauses);

}  // namespace depsolve::sat

#endif  // DEPSOLVE_SAT_HPP

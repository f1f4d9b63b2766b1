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

#include "depsolve/optimizer.hpp"

#include <algorithm>

#include "depsolve/encoder.hpp"
#include "depsolve/sat.hpp"

namespace depsolve::optimizer {

namespace {

using encoder::ClauseSet;
using encoder::VarMap;

class LexicographicSolve {
 public:
  LexicographicSolve(const Universe& u, const Request& r, const CriteriaList& c,
                     const Budget& budget)
      : u_(u), criteria_(c), vm_(u), remaining_(budget.conflicts) {
    base_ok_ = load(encoder::encode_universe(u, vm_));
    base_ok_ = load(encoder::encode_request(u, vm_, r)) && base_ok_;
    base_ok_ = load(encoder::encode_keep(u, vm_)) && base_ok_;
    // Branch toward the initial installation first: the first model then
    // starts close to the removed/changed optimum.
    for (const PackageId& id : u.initial_installation()) {
      solver_.set_polarity(vm_.var(id), true);
    }
  }

  SolveResult run() {
    SolveResult out;
    sat::Result first = call();
    if (first.status == sat::Status::Unsat) {
      out.kind = SolveResult::Kind::NoSolution;
      fill_stats(out);
      return out;
    }
    if (first.status == sat::Status::Unknown) {
      out.kind = SolveResult::Kind::Unknown;
      fill_stats(out);
      return out;
    }
    best_ = encoder::solution_of_model(vm_, first);

    for (const Criterion& crit : criteria_) {
      if (!optimize_layer(crit)) {
        return unknown_result();
      }
    }
    if (!canonicalize()) {
      return unknown_result();
    }

    out.kind = SolveResult::Kind::Solution;
    out.solution = best_;
    out.objective = objective_vector(u_, criteria_, *best_);
    fill_stats(out);
    return out;
  }

 private:
  bool load(const ClauseSet& clauses) {
    solver_.ensure_vars(vm_.var_count());
    bool ok = true;
    for (const auto& c : clauses) ok = solver_.add_clause(c) && ok;
    return ok;
  }

  sat::Result call(std::span<const sat::Lit> assumptions = {}) {
    solver_.set_conflict_budget(remaining_);
    std::int64_t before = solver_.conflicts();
    sat::Result res = solver_.solve(assumptions);
    if (remaining_ >= 0) {
      remaining_ = std::max<std::int64_t>(0, remaining_ - (solver_.conflicts() - before));
    }
    return res;
  }

  // Binary search over the layer's unary counter; returns false on budget
  // exhaustion.
  bool optimize_layer(const Criterion& crit) {
    encoder::ObjectiveLayer layer = encoder::build_objective(u_, vm_, crit);
    load(layer.defining_clauses);
    if (layer.terms.empty()) return true;

    std::vector<sat::Lit> lits;
    for (const auto& [w, l] : layer.terms) {
      for (std::int64_t i = 0; i < w; ++i) lits.push_back(l);
    }
    const std::int64_t total = static_cast<std::int64_t>(lits.size());
    std::int64_t current = evaluate(crit.measure, u_, *best_);
    // The exact counter costs O(n * cap) clauses; a minimizing layer never
    // looks above the incumbent, so cap there instead of at n.
    const std::int64_t cap = crit.sense == Criterion::Sense::Minimize
                                 ? std::min(total, current + 1)
                                 : total;
    encoder::Totalizer counter =
        encoder::Totalizer::build(lits, static_cast<int>(cap), vm_);
    load(counter.clauses);

    if (crit.sense == Criterion::Sense::Minimize) {
      std::int64_t lo = 0, hi = current;
      while (lo < hi) {
        std::int64_t mid = lo + (hi - lo) / 2;
        sat::Lit cap = -counter.outputs[static_cast<std::size_t>(mid)];
        sat::Result res = call({{cap}});
        if (res.status == sat::Status::Unknown) return false;
        if (res.status == sat::Status::Sat) {
          best_ = encoder::solution_of_model(vm_, res);
          hi = evaluate(crit.measure, u_, *best_);
        } else {
          lo = mid + 1;
        }
      }
      if (lo < cap) solver_.add_clause({-counter.outputs[static_cast<std::size_t>(lo)]});
    } else {
      std::int64_t lo = current, hi = total;
      while (lo < hi) {
        std::int64_t mid = lo + (hi - lo + 1) / 2;
        sat::Lit floor = counter.outputs[static_cast<std::size_t>(mid) - 1];
        sat::Result res = call({{floor}});
        if (res.status == sat::Status::Unknown) return false;
        if (res.status == sat::Status::Sat) {
          best_ = encoder::solution_of_model(vm_, res);
          lo = evaluate(crit.measure, u_, *best_);
        } else {
          hi = mid - 1;
        }
      }
      if (lo > 0) solver_.add_clause({counter.outputs[static_cast<std::size_t>(lo) - 1]});
    }
    return true;
  }

  // Deterministic tie-break among co-optimal models: per name in
  // lexicographic order, pin the highest version installable under the
  // frozen optima, else pin the name's versions out.
  bool canonicalize() {
    for (const auto& [name, versions] : u_.name_index()) {
      for (auto it = versions.rbegin(); it != versions.rend(); ++it) {
        sat::Lit x = vm_.var({name, *it});
        if (best_->installed.count({name, *it})) {
          solver_.add_clause({x});
          break;
        }
        if (solver_.fixed_value(x) == -1) continue;  // already forced out
        sat::Result res = call({{x}});
        if (res.status == sat::Status::Unknown) return false;
        if (res.status == sat::Status::Unsat) {
          solver_.add_clause({-x});
          continue;
        }
        best_ = encoder::solution_of_model(vm_, res);
        solver_.add_clause({x});
        break;
      }
    }
    return true;
  }

  SolveResult unknown_result() {
    SolveResult out;
    out.kind = SolveResult::Kind::Unknown;
    if (best_) {
      out.solution = best_;
      out.objective = objective_vector(u_, criteria_, *best_);
    }
    fill_stats(out);
    return out;
  }

  void fill_stats(SolveResult& out) {
    out.stats.conflicts = solver_.conflicts();
    out.stats.decisions = solver_.decisions();
    out.stats.propagations = solver_.propagations();
    out.stats.variables = solver_.num_vars();
    out.stats.clauses = solver_.num_clauses();
  }

  const Universe& u_;
  const CriteriaList& criteria_;
  VarMap vm_;
  sat::Solver solver_;
  std::int64_t remaining_;
  bool base_ok_ = true;
  std::optional<Solution> best_;
};

}  // namespace

SolveResult solve_upgrade(const Universe& u, const Request& r,
                          const CriteriaList& c, const Budget& budget) {
  return LexicographicSolve(u, r, c, budget).run();
}

}  // namespace depsolve::optimizer

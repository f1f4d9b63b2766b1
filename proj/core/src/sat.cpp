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

#include "depsolve/sat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace depsolve::sat {

struct Solver::Clause {
  float activity = 0;
  bool learnt = false;
  bool removed = false;
  std::vector<int> lits;  // internal literals
};

struct Solver::Watcher {
  CRef cref;
  int blocker;
};

namespace {

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr int kRestartBase = 100;

// Luby restart sequence.
double luby(double y, int x) {
  int size, seq;
  for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) {
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    seq--;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

Solver::Solver() = default;
Solver::~Solver() = default;

int Solver::new_var() {
  int v = static_cast<int>(activity_.size());
  activity_.push_back(0.0);
  assigns_.push_back(0);
  phase_.push_back(1);  // default polarity: false
  level_.push_back(0);
  reason_.push_back(kNoReason);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

void Solver::ensure_vars(int n) {
  while (num_vars() < n) new_var();
}

int Solver::value_of(int p) const {
  signed char a = assigns_[var_of(p)];
  if (a == 0) return 0;
  return (p & 1) ? -a : a;
}

int Solver::fixed_value(Lit l) const {
  int p = ilit(l);
  int v = var_of(p);
  if (assigns_[v] == 0 || level_[v] != 0) return 0;
  return value_of(p);
}

bool Solver::heap_less(int a, int b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void Solver::heap_sift_up(std::size_t i) {
  int v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_sift_down(std::size_t i) {
  int v = heap_[i];
  std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_insert(int v) {
  if (heap_pos_[v] >= 0) return;
  heap_.push_back(v);
  heap_pos_[v] = static_cast<int>(heap_.size() - 1);
  heap_sift_up(heap_.size() - 1);
}

void Solver::heap_update(int v) {
  if (heap_pos_[v] >= 0) heap_sift_up(static_cast<std::size_t>(heap_pos_[v]));
}

int Solver::heap_pop() {
  if (heap_.empty()) return -1;
  int v = heap_[0];
  heap_pos_[v] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_sift_down(0);
  }
  return v;
}

void Solver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  heap_update(v);
}

void Solver::bump_clause(CRef c) {
  Clause& cl = clauses_[c];
  cl.activity += static_cast<float>(clause_inc_);
  if (cl.activity > 1e20f) {
    for (CRef r : learnts_) clauses_[r].activity *= 1e-20f;
    clause_inc_ *= 1e-20;
  }
}

void Solver::decay_var_activity() { var_inc_ /= kVarDecay; }
void Solver::decay_clause_activity() { clause_inc_ /= kClauseDecay; }

Solver::CRef Solver::alloc_clause(const std::vector<int>& lits, bool learnt) {
  CRef c = static_cast<CRef>(clauses_.size());
  clauses_.push_back(Clause{0, learnt, false, lits});
  return c;
}

void Solver::attach_clause(CRef c) {
  const Clause& cl = clauses_[c];
  watches_[neg(cl.lits[0])].push_back({c, cl.lits[1]});
  watches_[neg(cl.lits[1])].push_back({c, cl.lits[0]});
}

void Solver::detach_clause(CRef c) {
  const Clause& cl = clauses_[c];
  for (int w : {neg(cl.lits[0]), neg(cl.lits[1])}) {
    auto& vec = watches_[w];
    vec.erase(std::remove_if(vec.begin(), vec.end(),
                             [c](const Watcher& x) { return x.cref == c; }),
              vec.end());
  }
}

bool Solver::clause_locked(CRef c) const {
  const Clause& cl = clauses_[c];
  return reason_[var_of(cl.lits[0])] == c && value_of(cl.lits[0]) == 1;
}

void Solver::enqueue(int p, CRef reason) {
  int v = var_of(p);
  assigns_[v] = (p & 1) ? -1 : 1;
  phase_[v] = static_cast<signed char>(p & 1);
  level_[v] = static_cast<int>(trail_lim_.size());
  reason_[v] = reason;
  trail_.push_back(p);
}

bool Solver::add_clause(std::vector<Lit> lits) {
  if (!ok_) return false;
  std::vector<int> c;
  c.reserve(lits.size());
  for (Lit l : lits) c.push_back(ilit(l));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  // Drop tautologies and literals already false at level 0.
  std::vector<int> kept;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i + 1 < c.size() && c[i + 1] == neg(c[i]) && var_of(c[i]) == var_of(c[i + 1])) {
      return true;  // tautology
    }
    int val = value_of(c[i]);
    if (val == 1 && level_[var_of(c[i])] == 0) return true;  // satisfied
    if (val == -1 && level_[var_of(c[i])] == 0) continue;
    kept.push_back(c[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  CRef cr = alloc_clause(kept, false);
  attach_clause(cr);
  ++n_original_;
  return true;
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];
    ++stats_propagations_;
    std::vector<Watcher>& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i];
      if (value_of(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& cl = clauses_[w.cref];
      std::vector<int>& lits = cl.lits;
      int false_lit = neg(p);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      ++i;
      int first = lits[0];
      if (first != w.blocker && value_of(first) == 1) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool found = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value_of(lits[k]) != -1) {
          std::swap(lits[1], lits[k]);
          watches_[neg(lits[1])].push_back({w.cref, first});
          found = true;
          break;
        }
      }
      if (found) continue;
      ws[j++] = {w.cref, first};
      if (value_of(first) == -1) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::backtrack_to(int target) {
  if (static_cast<int>(trail_lim_.size()) <= target) return;
  std::size_t bound = trail_lim_[target];
  for (std::size_t i = trail_.size(); i > bound; --i) {
    int v = var_of(trail_[i - 1]);
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    heap_insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(target);
  qhead_ = trail_.size();
}

// A learnt literal is redundant if its reason's literals are all already
// in the learnt clause (or fixed at level zero).
bool Solver::literal_redundant(int p) {
  CRef r = reason_[var_of(p)];
  if (r == kNoReason) return false;
  for (int q : clauses_[r].lits) {
    int v = var_of(q);
    if (v == var_of(p)) continue;
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void Solver::analyze(CRef confl, std::vector<int>& learnt, int& out_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int path = 0;
  int p = -1;
  std::size_t index = trail_.size();
  int cur_level = static_cast<int>(trail_lim_.size());
  analyze_clear_.clear();

  for (;;) {
    Clause& cl = clauses_[confl];
    if (cl.learnt) bump_clause(confl);
    for (std::size_t j = (p == -1 ? 0 : 1); j < cl.lits.size(); ++j) {
      int q = cl.lits[j];
      int v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        analyze_clear_.push_back(v);
        bump_var(v);
        if (level_[v] >= cur_level) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[var_of(trail_[index - 1])]) --index;
    p = trail_[--index];
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    if (--path == 0) break;
  }
  learnt[0] = neg(p);

  // Basic conflict-clause minimization.
  std::size_t j = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!literal_redundant(learnt[i])) learnt[j++] = learnt[i];
  }
  learnt.resize(j);

  if (learnt.size() == 1) {
    out_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    }
    std::swap(learnt[1], learnt[max_i]);
    out_level = level_[var_of(learnt[1])];
  }

  for (int v : analyze_clear_) seen_[v] = 0;
}

void Solver::analyze_final(int p, std::vector<Lit>& out_core) {
  out_core.clear();
  out_core.push_back(elit(neg(p)));  // the failed assumption itself
  if (trail_lim_.empty()) return;
  std::vector<int> to_clear;
  seen_[var_of(p)] = 1;
  to_clear.push_back(var_of(p));
  for (std::size_t i = trail_.size(); i > trail_lim_[0]; --i) {
    int v = var_of(trail_[i - 1]);
    if (!seen_[v]) continue;
    if (reason_[v] == kNoReason) {
      // A decision below the assumption prefix is itself an assumption.
      out_core.push_back(elit(trail_[i - 1]));
    } else {
      for (int q : clauses_[reason_[v]].lits) {
        int qv = var_of(q);
        if (!seen_[qv] && level_[qv] > 0) {
          seen_[qv] = 1;
          to_clear.push_back(qv);
        }
      }
    }
  }
  for (int v : to_clear) seen_[v] = 0;
}

int Solver::pick_branch_var() {
  for (;;) {
    int v = heap_pop();
    if (v < 0) return -1;
    if (assigns_[v] == 0) return v;
  }
}

void Solver::reduce_learnts() {
  std::vector<CRef> sorted = learnts_;
  std::sort(sorted.begin(), sorted.end(), [this](CRef a, CRef b) {
    const Clause& ca = clauses_[a];
    const Clause& cb = clauses_[b];
    bool ba = ca.lits.size() == 2;
    bool bb = cb.lits.size() == 2;
    if (ba != bb) return bb;  // binaries last (kept)
    if (ca.activity != cb.activity) return ca.activity < cb.activity;
    return a < b;
  });
  std::size_t limit = sorted.size() / 2;
  std::vector<CRef> kept;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    CRef c = sorted[i];
    if (i < limit && clauses_[c].lits.size() > 2 && !clause_locked(c)) {
      detach_clause(c);
      clauses_[c].removed = true;
    } else {
      kept.push_back(c);
    }
  }
  learnts_ = std::move(kept);
}

Result Solver::solve(std::span<const Lit> assumptions) {
  Result res;
  if (!ok_) {
    res.status = Status::Unsat;
    return res;
  }
  backtrack_to(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    res.status = Status::Unsat;
    return res;
  }

  const std::int64_t conflicts_at_start = stats_conflicts_;
  if (max_learnts_ <= 0) {
    max_learnts_ = std::max<double>(1000.0, static_cast<double>(n_original_) / 3.0);
  }

  int restarts = 0;
  std::int64_t restart_limit =
      static_cast<std::int64_t>(luby(2.0, restarts) * kRestartBase);
  std::int64_t conflicts_since_restart = 0;
  std::vector<int> learnt;

  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_conflicts_;
      ++conflicts_since_restart;
      if (trail_lim_.empty()) {
        ok_ = false;
        res.status = Status::Unsat;
        return res;
      }
      int bt_level = 0;
      analyze(confl, learnt, bt_level);
      backtrack_to(bt_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        CRef cr = alloc_clause(learnt, true);
        learnts_.push_back(cr);
        attach_clause(cr);
        bump_clause(cr);
        enqueue(learnt[0], cr);
      }
      decay_var_activity();
      decay_clause_activity();
      if (budget_ >= 0 && stats_conflicts_ - conflicts_at_start > budget_) {
        backtrack_to(0);
        res.status = Status::Unknown;
        return res;
      }
      continue;
    }

    if (conflicts_since_restart >= restart_limit) {
      ++restarts;
      conflicts_since_restart = 0;
      restart_limit = static_cast<std::int64_t>(luby(2.0, restarts) * kRestartBase);
      backtrack_to(0);
      continue;
    }
    if (static_cast<double>(learnts_.size()) >=
        max_learnts_ + static_cast<double>(trail_.size())) {
      reduce_learnts();
      max_learnts_ *= 1.1;
    }

    if (trail_lim_.size() < assumptions.size()) {
      int p = ilit(assumptions[trail_lim_.size()]);
      int val = value_of(p);
      if (val == 1) {
        trail_lim_.push_back(trail_.size());  // dummy level, already implied
        continue;
      }
      if (val == -1) {
        analyze_final(neg(p), res.core);
        backtrack_to(0);
        res.status = Status::Unsat;
        return res;
      }
      ++stats_decisions_;
      trail_lim_.push_back(trail_.size());
      enqueue(p, kNoReason);
      continue;
    }

    int v = pick_branch_var();
    if (v < 0) {
      res.status = Status::Sat;
      res.model.assign(static_cast<std::size_t>(num_vars()) + 1, false);
      for (int x = 0; x < num_vars(); ++x) {
        res.model[static_cast<std::size_t>(x) + 1] = assigns_[x] == 1;
      }
      backtrack_to(0);
      return res;
    }
    ++stats_decisions_;
    trail_lim_.push_back(trail_.size());
    enqueue(2 * v + phase_[v], kNoReason);
  }
}

DimacsProblem parse_dimacs(const std::string& text) {
  DimacsProblem out;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::vector<Lit> cur;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      int nv = 0, nc = 0;
      if (!(hs >> p >> cnf >> nv >> nc) || cnf != "cnf") {
        throw std::runtime_error("bad DIMACS header: " + line);
      }
      out.num_vars = nv;
      have_header = true;
      continue;
    }
    if (!have_header) {
      throw std::runtime_error("DIMACS clause before p cnf header: " + line);
    }
    std::istringstream ls(line);
    Lit l;
    while (ls >> l) {
      if (l == 0) {
        out.clauses.push_back(cur);
        cur.clear();
      } else {
        if (std::abs(l) > out.num_vars) {
          throw std::runtime_error("DIMACS literal out of range: " +
                                   std::to_string(l));
        }
        cur.push_back(l);
      }
    }
  }
  if (!cur.empty()) out.clauses.push_back(cur);
  if (!have_header) throw std::runtime_error("not a DIMACS CNF file");
  return out;
}

std::string write_dimacs(int num_vars,
                         const std::vector<std::vector<Lit>>& clauses) {
  std::string out = "p cnf " + std::to_string(num_vars) + " " +
                    std::to_string(clauses.size()) + "\n";
  for (const auto& c : clauses) {
    for (Lit l : c) out += std::to_string(l) + " ";
    out += "0\n";
  }
  return out;
}

}  // namespace depsolve::sat

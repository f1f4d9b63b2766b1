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

#ifndef DEPSOLVE_TESTS_MINI_DPLL_HPP
#define DEPSOLVE_TESTS_MINI_DPLL_HPP

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "depsolve/encoder.hpp"

namespace depsolve::testutil {

// Deliberately naive DPLL, independent of the production CDCL solver, used
// as the referee for encoding fidelity. Assignment: 0 unset, +1, -1.
struct MiniDpll {
  const encoder::ClauseSet& clauses;
  std::vector<int> assign;  // index 0 unused

  MiniDpll(const encoder::ClauseSet& cs, int nvars)
      : clauses(cs), assign(static_cast<std::size_t>(nvars) + 1, 0) {}

  int value(sat::Lit l) const {
    int a = assign[static_cast<std::size_t>(std::abs(l))];
    return l > 0 ? a : -a;
  }

  // Returns false on conflict; true once every clause has a true literal
  // or an unassigned one (after saturating unit propagation).
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses) {
        int unassigned = 0;
        sat::Lit last = 0;
        bool sat_clause = false;
        for (sat::Lit l : c) {
          int v = value(l);
          if (v > 0) { sat_clause = true; break; }
          if (v == 0) { ++unassigned; last = l; }
        }
        if (sat_clause) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign[static_cast<std::size_t>(std::abs(last))] = last > 0 ? 1 : -1;
          changed = true;
        }
      }
    }
    return true;
  }

  bool search() {
    std::vector<int> saved = assign;
    if (!propagate()) { assign = saved; return false; }
    auto it = std::find(assign.begin() + 1, assign.end(), 0);
    if (it == assign.end()) return true;
    int v = static_cast<int>(it - assign.begin());
    for (int val : {1, -1}) {
      std::vector<int> snap = assign;
      assign[static_cast<std::size_t>(v)] = val;
      if (search()) return true;
      assign = snap;
    }
    assign = saved;
    return false;
  }
};

}  // namespace depsolve::testutil

#endif  // DEPSOLVE_TESTS_MINI_DPLL_HPP

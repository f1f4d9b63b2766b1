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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "depsolve/generator.hpp"
#include "depsolve/sat.hpp"

using namespace depsolve;
using sat::Lit;

namespace {

bool clause_satisfied(const std::vector<Lit>& clause, std::uint32_t assignment) {
  return std::any_of(clause.begin(), clause.end(), [&](Lit l) {
    int v = l > 0 ? l : -l;
    bool val = (assignment >> (v - 1)) & 1u;
    return l > 0 ? val : !val;
  });
}

bool all_satisfied(const std::vector<std::vector<Lit>>& clauses,
                   std::uint32_t assignment) {
  return std::all_of(clauses.begin(), clauses.end(), [&](const auto& c) {
    return clause_satisfied(c, assignment);
  });
}

// Ground truth by full enumeration; usable up to ~20 variables.
bool enumerate_sat(int n, const std::vector<std::vector<Lit>>& clauses) {
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    if (all_satisfied(clauses, a)) return true;
  }
  return false;
}

std::vector<std::vector<Lit>> random_cnf(int n, int m, int k,
                                         gen::SplitMix64& rng) {
  std::vector<std::vector<Lit>> clauses;
  for (int i = 0; i < m; ++i) {
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < k) {
      vars.insert(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
    std::vector<Lit> c;
    for (int v : vars) c.push_back(rng.next() & 1 ? v : -v);
    clauses.push_back(std::move(c));
  }
  return clauses;
}

sat::Result run(int n, const std::vector<std::vector<Lit>>& clauses,
                std::vector<Lit> assumptions = {}) {
  sat::Solver s;
  s.ensure_vars(n);
  for (auto c : clauses) s.add_clause(std::move(c));
  return s.solve(assumptions);
}

}  // namespace

TEST_CASE("basic propagation and units") {
  sat::Solver s;
  s.ensure_vars(3);
  s.add_clause({1});
  s.add_clause({-1, 2});
  s.add_clause({-2, 3});
  sat::Result r = s.solve();
  REQUIRE(r.status == sat::Status::Sat);
  CHECK(r.value(1));
  CHECK(r.value(2));
  CHECK(r.value(3));
  CHECK(s.fixed_value(1) == 1);
  CHECK(s.fixed_value(-3) == -1);
}

TEST_CASE("trivial contradictions") {
  SUBCASE("opposite units") {
    sat::Solver s;
    s.ensure_vars(1);
    s.add_clause({1});
    CHECK_FALSE(s.add_clause({-1}));
    CHECK(s.solve().status == sat::Status::Unsat);
  }
  SUBCASE("empty clause") {
    sat::Solver s;
    s.add_clause({});
    CHECK_FALSE(s.ok());
    CHECK(s.solve().status == sat::Status::Unsat);
  }
  SUBCASE("tautological clause is dropped harmlessly") {
    sat::Solver s;
    s.ensure_vars(2);
    s.add_clause({1, -1});
    s.add_clause({2});
    sat::Result r = s.solve();
    REQUIRE(r.status == sat::Status::Sat);
    CHECK(r.value(2));
  }
}

TEST_CASE("agreement with exhaustive enumeration on 500 random CNFs") {
  gen::SplitMix64 rng(0x5eed5a7);
  int sat_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    int n = 4 + static_cast<int>(rng.below(13));           // 4..16 vars
    int m = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(4 * n)));
    int k = 2 + static_cast<int>(rng.below(2));            // 2- or 3-CNF
    auto clauses = random_cnf(n, m, k, rng);

    bool expected = enumerate_sat(n, clauses);
    sat::Result r = run(n, clauses);
    REQUIRE(r.status != sat::Status::Unknown);
    CHECK((r.status == sat::Status::Sat) == expected);
    if (r.status == sat::Status::Sat) {
      ++sat_count;
      std::uint32_t a = 0;
      for (int v = 1; v <= n; ++v) {
        if (r.value(v)) a |= 1u << (v - 1);
      }
      CHECK(all_satisfied(clauses, a));
    }
  }
  // The mix must exercise both outcomes to mean anything.
  CHECK(sat_count > 50);
  CHECK(sat_count < 450);
}

TEST_CASE("near-threshold 3-CNFs at n=60 yield sound models") {
  gen::SplitMix64 rng(0xbeef);
  const int n = 60;
  int sat_count = 0, unsat_count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    // m/n = 4.26 sits at the classic 3-SAT phase transition.
    auto clauses = random_cnf(n, 256, 3, rng);
    sat::Result r = run(n, clauses);
    REQUIRE(r.status != sat::Status::Unknown);
    if (r.status == sat::Status::Sat) {
      ++sat_count;
      for (const auto& c : clauses) {
        bool sat_clause = std::any_of(c.begin(), c.end(),
                                      [&](Lit l) { return r.value(l); });
        REQUIRE(sat_clause);
      }
    } else {
      ++unsat_count;
    }
  }
  CHECK(sat_count + unsat_count == 50);
}

TEST_CASE("pigeonhole is unsatisfiable") {
  // 5 pigeons, 4 holes. Var(p, h) = 4 * p + h + 1.
  sat::Solver s;
  s.ensure_vars(20);
  for (int p = 0; p < 5; ++p) {
    std::vector<Lit> at_least;
    for (int h = 0; h < 4; ++h) at_least.push_back(4 * p + h + 1);
    s.add_clause(at_least);
  }
  for (int h = 0; h < 4; ++h) {
    for (int p1 = 0; p1 < 5; ++p1) {
      for (int p2 = p1 + 1; p2 < 5; ++p2) {
        s.add_clause({-(4 * p1 + h + 1), -(4 * p2 + h + 1)});
      }
    }
  }
  CHECK(s.solve().status == sat::Status::Unsat);
}

TEST_CASE("assumptions") {
  sat::Solver s;
  s.ensure_vars(3);
  s.add_clause({-1, 2});
  s.add_clause({-2, 3});

  SUBCASE("assumption propagates into the model") {
    sat::Result r = s.solve({1});
    REQUIRE(r.status == sat::Status::Sat);
    CHECK(r.value(3));
  }
  SUBCASE("incompatible assumptions give a core") {
    sat::Result r = s.solve({1, -3});
    REQUIRE(r.status == sat::Status::Unsat);
    CHECK_FALSE(r.core.empty());
    for (Lit l : r.core) CHECK((l == 1 || l == -3));
  }
  SUBCASE("state is reusable after an assumption failure") {
    (void)s.solve({1, -3});
    CHECK(s.solve({1}).status == sat::Status::Sat);
    CHECK(s.solve({-3}).status == sat::Status::Sat);
  }
  SUBCASE("contradictory assumption pair on one variable") {
    sat::Result r = s.solve({2, -2});
    REQUIRE(r.status == sat::Status::Unsat);
    CHECK_FALSE(r.core.empty());
  }
}

TEST_CASE("unsat core is a usable subset of the assumptions") {
  gen::SplitMix64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 6 + static_cast<int>(rng.below(6));
    auto clauses = random_cnf(n, 3 * n, 3, rng);
    std::vector<Lit> assumptions;
    for (int v = 1; v <= n; ++v) {
      if (rng.next() & 1) assumptions.push_back(rng.next() & 1 ? v : -v);
    }
    sat::Solver s;
    s.ensure_vars(n);
    for (auto c : clauses) s.add_clause(std::move(c));
    sat::Result r = s.solve(assumptions);
    if (r.status != sat::Status::Unsat) continue;
    for (Lit l : r.core) {
      CHECK(std::count(assumptions.begin(), assumptions.end(), l) == 1);
    }
    // Solving under the core alone must stay unsatisfiable.
    CHECK(s.solve(r.core).status == sat::Status::Unsat);
  }
}

TEST_CASE("conflict budget reports unknown") {
  // A hard pigeonhole with a tiny budget cannot finish.
  sat::Solver s;
  const int pigeons = 9, holes = 8;
  s.ensure_vars(pigeons * holes);
  auto var = [&](int p, int h) { return holes * p + h + 1; };
  for (int p = 0; p < pigeons; ++p) {
    std::vector<Lit> c;
    for (int h = 0; h < holes; ++h) c.push_back(var(p, h));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h) {
    for (int p1 = 0; p1 < pigeons; ++p1) {
      for (int p2 = p1 + 1; p2 < pigeons; ++p2) {
        s.add_clause({-var(p1, h), -var(p2, h)});
      }
    }
  }
  s.set_conflict_budget(10);
  CHECK(s.solve().status == sat::Status::Unknown);
  s.set_conflict_budget(-1);
  CHECK(s.solve().status == sat::Status::Unsat);
}

TEST_CASE("determinism across repeated runs") {
  gen::SplitMix64 rng(7);
  auto clauses = random_cnf(14, 50, 3, rng);
  sat::Result first = run(14, clauses);
  for (int i = 0; i < 3; ++i) {
    sat::Result again = run(14, clauses);
    CHECK(again.status == first.status);
    if (first.status == sat::Status::Sat) CHECK(again.model == first.model);
  }
}

TEST_CASE("dimacs parsing and writing") {
  const std::string text =
      "c example\n"
      "p cnf 3 2\n"
      "1 -2 0\n"
      "2 3 0\n";
  sat::DimacsProblem p = sat::parse_dimacs(text);
  CHECK(p.num_vars == 3);
  REQUIRE(p.clauses.size() == 2);
  CHECK(p.clauses[0] == std::vector<Lit>{1, -2});
  CHECK(p.clauses[1] == std::vector<Lit>{2, 3});

  std::string out = sat::write_dimacs(p.num_vars, p.clauses);
  sat::DimacsProblem back = sat::parse_dimacs(out);
  CHECK(back.num_vars == p.num_vars);
  CHECK(back.clauses == p.clauses);

  CHECK_THROWS_AS(sat::parse_dimacs("1 2 0\n"), std::runtime_error);
  CHECK_THROWS_AS(sat::parse_dimacs("p cnf 2 1\n1 5 0\n"), std::runtime_error);
}

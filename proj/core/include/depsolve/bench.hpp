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

#ifndef DEPSOLVE_BENCH_HPP
#define DEPSOLVE_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depsolve/criteria.hpp"

namespace depsolve::bench {

struct BenchRow {
  int size = 0;
  std::uint64_t seed = 0;
  std::string outcome;  // solution | no-solution | unknown
  double wall_ms = 0;
  std::int64_t conflicts = 0;
  std::int64_t decisions = 0;
  int variables = 0;
  std::size_t clauses = 0;
  std::string objective;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  /// CSV schema (docs/formats.md): size,seed,outcome,wall_ms,conflicts,
  /// decisions,variables,clauses,objective
  std::string to_csv() const;
  std::string to_text() const;
};

/// Times solve_upgrade on generated universes with mixed requests, one
/// row per (size, seed). Outcome columns are reproducible; timings are
/// informational.
BenchReport run_bench(const std::vector<int>& sizes,
                      const std::vector<std::uint64_t>& seeds,
                      const CriteriaList& criteria);

}  // namespace depsolve::bench

#endif  // DEPSOLVE_BENCH_HPP

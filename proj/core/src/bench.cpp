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

#include "depsolve/bench.hpp"

#include <chrono>
#include <sstream>

#include "depsolve/generator.hpp"
#include "depsolve/optimizer.hpp"

namespace depsolve::bench {

namespace {

std::string objective_string(const std::vector<std::int64_t>& vec) {
  std::string out;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vec[i]);
  }
  return out;
}

}  // namespace

BenchReport run_bench(const std::vector<int>& sizes,
                      const std::vector<std::uint64_t>& seeds,
                      const CriteriaList& criteria) {
  BenchReport report;
  for (int size : sizes) {
    for (std::uint64_t seed : seeds) {
      gen::UniverseParams params;
      params.n_packages = size;
      Universe u = gen::gen_universe(params, seed);
      Request r = gen::gen_request(u, gen::RequestShape::Mixed, seed + 1);

      auto start = std::chrono::steady_clock::now();
      optimizer::SolveResult res = optimizer::solve_upgrade(u, r, criteria);
      auto stop = std::chrono::steady_clock::now();

      BenchRow row;
      row.size = size;
      row.seed = seed;
      switch (res.kind) {
        case optimizer::SolveResult::Kind::Solution: row.outcome = "solution"; break;
        case optimizer::SolveResult::Kind::NoSolution: row.outcome = "no-solution"; break;
        case optimizer::SolveResult::Kind::Unknown: row.outcome = "unknown"; break;
      }
      row.wall_ms =
          std::chrono::duration<double, std::milli>(stop - start).count();
      row.conflicts = res.stats.conflicts;
      row.decisions = res.stats.decisions;
      row.variables = res.stats.variables;
      row.clauses = res.stats.clauses;
      row.objective = objective_string(res.objective);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string BenchReport::to_csv() const {
  std::string out =
      "size,seed,outcome,wall_ms,conflicts,decisions,variables,clauses,objective\n";
  for (const BenchRow& r : rows) {
    std::ostringstream line;
    line << r.size << ',' << r.seed << ',' << r.outcome << ',' << r.wall_ms
         << ',' << r.conflicts << ',' << r.decisions << ',' << r.variables
         << ',' << r.clauses << ',' << '"' << r.objective << '"' << '\n';
    out += line.str();
  }
  return out;
}

std::string BenchReport::to_text() const {
  std::ostringstream out;
  out << "size      seed  outcome      wall_ms   conflicts  decisions  vars    clauses  objective\n";
  for (const BenchRow& r : rows) {
    out << r.size << "\t" << r.seed << "\t" << r.outcome << "\t" << r.wall_ms
        << "\t" << r.conflicts << "\t" << r.decisions << "\t" << r.variables
        << "\t" << r.clauses << "\t(" << r.objective << ")\n";
  }
  return out.str();
}

}  // namespace depsolve::bench

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

#ifndef DEPSOLVE_ORACLE_HPP
#define DEPSOLVE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "depsolve/criteria.hpp"
#include "depsolve/model.hpp"

namespace depsolve::oracle {

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(std::size_t size, std::size_t cap);
};

/// Exhaustive ground truth: all 2^n candidate installations, filtered by
/// the checker, ranked lexicographically. Deliberately dumb.
struct OptimalResult {
  bool feasible = false;
  std::vector<std::int64_t> optimum;     // objective vector, when feasible
  std::vector<Solution> optimal_set;     // all co-optimal solutions
};

/// Enumerates subsets by increasing popcount, then numeric mask order
/// over ids sorted by (name, version). Throws CapExceeded when the
/// universe has more than `cap` package-versions.
OptimalResult brute_force(const Universe& u, const Request& r,
                          const CriteriaList& c, std::size_t cap = 20);

}  // namespace depsolve::oracle

#endif  // DEPSOLVE_ORACLE_HPP

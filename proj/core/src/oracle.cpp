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

#include "depsolve/oracle.hpp"

#include <algorithm>
#include <bit>

#include "depsolve/checker.hpp"

namespace depsolve::oracle {

CapExceeded::CapExceeded(std::size_t size, std::size_t cap)
    : std::runtime_error("universe has " + std::to_string(size) +
                         " package-versions, oracle cap is " +
                         std::to_string(cap)) {}

OptimalResult brute_force(const Universe& u, const Request& r,
                          const CriteriaList& c, std::size_t cap) {
  const std::size_t n = u.size();
  if (n > cap) throw CapExceeded(n, cap);

  std::vector<PackageId> ids;
  for (const auto& [name, versions] : u.name_index()) {
    for (Version v : versions) ids.push_back({name, v});
  }

  OptimalResult result;
  std::vector<std::uint32_t> masks;
  masks.reserve(std::size_t{1} << n);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) < std::popcount(b);
                   });

  for (std::uint32_t mask : masks) {
    Solution s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) s.installed.insert(ids[i]);
    }
    if (!checker::check(u, r, s).valid()) continue;
    std::vector<std::int64_t> vec = objective_vector(u, c, s);
    if (!result.feasible) {
      result.feasible = true;
      result.optimum = vec;
      result.optimal_set = {std::move(s)};
      continue;
    }
    // Lexicographic comparison oriented by each criterion's sense.
    int cmp = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (vec[i] == result.optimum[i]) continue;
      bool better = c[i].sense == Criterion::Sense::Minimize
                        ? vec[i] < result.optimum[i]
                        : vec[i] > result.optimum[i];
      cmp = better ? -1 : 1;
      break;
    }
    if (cmp < 0) {
      result.optimum = vec;
      result.optimal_set = {std::move(s)};
    } else if (cmp == 0) {
      result.optimal_set.push_back(std::move(s));
    }
  }
  return result;
}

}  // namespace depsolve::oracle

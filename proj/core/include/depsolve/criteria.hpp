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

#ifndef DEPSOLVE_CRITERIA_HPP
#define DEPSOLVE_CRITERIA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "depsolve/model.hpp"

namespace depsolve {

enum class Measure { Removed, New, Changed, NotUpToDate, UnsatRecommends };

std::string to_string(Measure m);

struct Criterion {
  enum class Sense { Minimize, Maximize };
  Sense sense = Sense::Minimize;
  Measure measure = Measure::Removed;

  bool operator==(const Criterion&) const = default;
};

/// Ordered lexicographic preference list; first entry is most significant.
using CriteriaList = std::vector<Criterion>;

class CriteriaParseError : public std::runtime_error {
 public:
  CriteriaParseError(std::size_t position, const std::string& token);
  std::size_t position;
  std::string token;
};

/// Grammar: comma-separated `-measure` (minimize) / `+measure` (maximize),
/// plus the shortcuts `paranoid` (-removed,-changed) and `trendy`
/// (-removed,-notuptodate,-unsat_recommends,-new).
CriteriaList parse_criteria(const std::string& text);

std::string to_string(const CriteriaList& c);

/// Value of one measure on a solution (see each counter's definition in
/// terms of per-name installed-version sets).
std::int64_t evaluate(Measure m, const Universe& u, const Solution& s);

std::vector<std::int64_t> objective_vector(const Universe& u,
                                           const CriteriaList& c,
                                           const Solution& s);

enum class Ordering { FirstBetter, Equal, SecondBetter };

/// Lexicographic comparison of objective vectors, each component oriented
/// by its criterion's sense.
Ordering compare(const CriteriaList& c, const Universe& u, const Solution& s1,
                 const Solution& s2);

}  // namespace depsolve

#endif  // DEPSOLVE_CRITERIA_HPP

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

#ifndef DEPSOLVE_CHECKER_HPP
#define DEPSOLVE_CHECKER_HPP

#include <string>
#include <vector>

#include "depsolve/model.hpp"

namespace depsolve::checker {

/// Independent validation of a proposed solution. Works directly on sets;
/// shares no machinery with the SAT encoding.
struct CheckReport {
  std::vector<Violation> consistency;
  std::vector<std::string> request_violations;
  std::vector<std::string> keep_violations;

  bool valid() const {
    return consistency.empty() && request_violations.empty() &&
           keep_violations.empty();
  }
  std::vector<std::string> lines() const;
};

/// Throws UnknownPackage if s references ids outside u.
CheckReport check(const Universe& u, const Request& r, const Solution& s);

}  // namespace depsolve::checker

#endif  // DEPSOLVE_CHECKER_HPP

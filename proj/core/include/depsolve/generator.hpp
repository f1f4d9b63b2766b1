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

#ifndef DEPSOLVE_GENERATOR_HPP
#define DEPSOLVE_GENERATOR_HPP

#include <cstdint>

#include "depsolve/model.hpp"

namespace depsolve::gen {

/// splitmix64: the fixed pseudo-random algorithm behind all generated
/// corpora (documented in docs/formats.md), so identical parameters give
/// byte-identical instances on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by multiply-shift (n < 2^32).
  std::uint64_t below(std::uint64_t n) {
    return (next() >> 32) * n >> 32;
  }

  /// Uniform real in [0, 1).
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct UniverseParams {
  int n_packages = 12;
  int min_versions = 1;
  int max_versions = 3;
  double dep_density = 0.15;
  double conflict_density = 0.05;
  double installed_fraction = 0.3;
  /// Probability that a generated dependency carries an unsatisfiable
  /// version bound (exercises the no-solution path).
  double unsat_bound_probability = 0.05;
};

/// Deterministic in (params, seed). Dependencies reference existing names;
/// output always passes Universe::build.
Universe gen_universe(const UniverseParams& params, std::uint64_t seed);

enum class RequestShape { Install, Remove, Upgrade, Mixed };

/// Deterministic request over names of u; Mixed draws 1-3 atoms across
/// kinds. Empty universe yields an empty request.
Request gen_request(const Universe& u, RequestShape shape, std::uint64_t seed);

}  // namespace depsolve::gen

#endif  // DEPSOLVE_GENERATOR_HPP

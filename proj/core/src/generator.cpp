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

#include "depsolve/generator.hpp"

#include <algorithm>

namespace depsolve::gen {

namespace {

// At most this many dependency / conflict draws per stanza, so density
// keeps meaning "fraction of sampled candidates" at every universe size.
constexpr int kMaxDrawsPerStanza = 20;

RelOp pick_relop(SplitMix64& rng) {
  switch (rng.below(3)) {
    case 0: return RelOp::Geq;
    case 1: return RelOp::Leq;
    default: return RelOp::Eq;
  }
}

}  // namespace

Universe gen_universe(const UniverseParams& params, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int n = params.n_packages;
  if (n <= 0) return Universe::build({});

  // Carve n package-versions into names p1, p2, ...
  std::vector<std::pair<PackageName, int>> names;  // (name, version count)
  int used = 0;
  while (used < n) {
    int span = params.max_versions - params.min_versions + 1;
    int k = params.min_versions + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, span))));
    k = std::min(k, n - used);
    k = std::max(k, 1);
    names.emplace_back("p" + std::to_string(names.size() + 1), k);
    used += k;
  }
  const int name_count = static_cast<int>(names.size());

  std::vector<PackageStanza> stanzas;
  for (int i = 0; i < name_count; ++i) {
    for (int v = 1; v <= names[i].second; ++v) {
      PackageStanza p;
      p.id = {names[i].first, v};

      int draws = std::min(kMaxDrawsPerStanza, name_count - 1);
      for (int t = 0; t < draws; ++t) {
        if (rng.real() >= params.dep_density) continue;
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(name_count)));
        if (j == i) continue;
        Disjunct d;
        auto make_atom = [&](int target) {
          VpkgAtom a{names[target].first, std::nullopt};
          int maxv = names[target].second;
          if (rng.real() < params.unsat_bound_probability) {
            a.constraint = VersionConstraint{RelOp::Geq, maxv + 1};
          } else if (rng.real() < 0.5) {
            a.constraint = VersionConstraint{
                pick_relop(rng), 1 + static_cast<Version>(rng.below(
                                         static_cast<std::uint64_t>(maxv)))};
          }
          return a;
        };
        d.push_back(make_atom(j));
        if (rng.real() < 0.3) {
          int j2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(name_count)));
          if (j2 != i && j2 != j) d.push_back(make_atom(j2));
        }
        p.depends.conjuncts.push_back(std::move(d));
      }

      for (int t = 0; t < draws; ++t) {
        if (rng.real() >= params.conflict_density) continue;
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(name_count)));
        if (j == i) continue;
        VpkgAtom a{names[j].first, std::nullopt};
        if (rng.real() < 0.5) {
          a.constraint = VersionConstraint{
              RelOp::Eq, 1 + static_cast<Version>(rng.below(
                                 static_cast<std::uint64_t>(names[j].second)))};
        }
        p.conflicts.push_back(std::move(a));
      }

      if (rng.real() < params.installed_fraction) {
        p.installed = true;
        double k = rng.real();
        if (k < 0.05) p.keep = KeepLevel::Version;
        else if (k < 0.10) p.keep = KeepLevel::Package;
      }
      stanzas.push_back(std::move(p));
    }
  }
  return Universe::build(std::move(stanzas));
}

namespace {

VpkgAtom random_atom(const Universe& u, SplitMix64& rng) {
  const auto& index = u.name_index();
  std::uint64_t pick = rng.below(index.size());
  auto it = index.begin();
  std::advance(it, static_cast<long>(pick));
  VpkgAtom a{it->first, std::nullopt};
  if (rng.real() < 0.5) {
    Version maxv = it->second.back();
    a.constraint = VersionConstraint{
        pick_relop(rng),
        1 + static_cast<Version>(rng.below(static_cast<std::uint64_t>(maxv)))};
  }
  return a;
}

}  // namespace

Request gen_request(const Universe& u, RequestShape shape, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Request r;
  if (u.name_index().empty()) return r;
  int count = shape == RequestShape::Mixed ? 1 + static_cast<int>(rng.below(3)) : 1;
  for (int i = 0; i < count; ++i) {
    RequestShape k = shape;
    if (shape == RequestShape::Mixed) {
      switch (rng.below(3)) {
        case 0: k = RequestShape::Install; break;
        case 1: k = RequestShape::Remove; break;
        default: k = RequestShape::Upgrade; break;
      }
    }
    VpkgAtom a = random_atom(u, rng);
    switch (k) {
      case RequestShape::Install: r.install.push_back(std::move(a)); break;
      case RequestShape::Remove: r.remove.push_back(std::move(a)); break;
      case RequestShape::Upgrade:
        a.constraint.reset();  // upgrades target whole names
        r.upgrade.push_back(std::move(a));
        break;
      case RequestShape::Mixed: break;
    }
  }
  return r;
}

}  // namespace depsolve::gen

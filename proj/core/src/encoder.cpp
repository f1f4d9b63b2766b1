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

#include "depsolve/encoder.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace depsolve::encoder {

VarMap::VarMap(const Universe& u) {
  for (const auto& [name, versions] : u.name_index()) {
    for (Version v : versions) by_var_.push_back({name, v});
  }
  for (const PackageId& id : by_var_) to_var_.emplace(id, next_++);
}

int VarMap::var(const PackageId& id) const {
  auto it = to_var_.find(id);
  if (it == to_var_.end()) {
    throw std::out_of_range("no variable for " + to_string(id));
  }
  return it->second;
}

const PackageId* VarMap::package_of(int var) const {
  if (var < 1 || var > package_count()) return nullptr;
  return &by_var_[static_cast<std::size_t>(var) - 1];
}

namespace {

std::vector<Lit> provider_vars(const Universe& u, const VarMap& vm,
                               const VpkgAtom& atom) {
  std::vector<Lit> out;
  for (const PackageId& q : u.providers(atom)) out.push_back(vm.var(q));
  return out;
}

}  // namespace

ClauseSet encode_universe(const Universe& u, const VarMap& vm) {
  ClauseSet out;
  std::set<std::pair<Lit, Lit>> conflict_pairs;
  for (const PackageStanza& p : u.stanzas()) {
    Lit xp = vm.var(p.id);
    for (const Disjunct& d : p.depends.conjuncts) {
      std::vector<Lit> lits;
      std::set<Lit> dedup;
      bool self_satisfied = false;
      for (const VpkgAtom& a : d) {
        for (Lit q : provider_vars(u, vm, a)) {
          if (q == xp) {
            self_satisfied = true;  // tautology: p satisfies its own conjunct
            break;
          }
          if (dedup.insert(q).second) lits.push_back(q);
        }
        if (self_satisfied) break;
      }
      if (self_satisfied) continue;
      Clause c;
      c.push_back(-xp);
      c.insert(c.end(), lits.begin(), lits.end());
      out.push_back(std::move(c));
    }
    for (const VpkgAtom& a : p.conflicts) {
      for (Lit xq : provider_vars(u, vm, a)) {
        if (xq == xp) continue;  // self-exemption, incl. own provides
        auto pair = std::minmax(xp, xq);
        if (conflict_pairs.emplace(pair.first, pair.second).second) {
          out.push_back({-pair.first, -pair.second});
        }
      }
    }
  }
  return out;
}

ClauseSet at_most_one(std::span<const Lit> lits, VarMap& vm) {
  ClauseSet out;
  std::size_t n = lits.size();
  if (n < 2) return out;
  if (n < 8) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        out.push_back({-lits[i], -lits[j]});
      }
    }
    return out;
  }
  // Sequential counter: s_i <- "some literal among the first i is true".
  std::vector<Lit> s(n - 1);
  for (auto& x : s) x = vm.new_aux();
  out.push_back({-lits[0], s[0]});
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.push_back({-lits[i], s[i]});
    out.push_back({-s[i - 1], s[i]});
    out.push_back({-lits[i], -s[i - 1]});
  }
  out.push_back({-lits[n - 1], -s[n - 2]});
  return out;
}

ClauseSet encode_request(const Universe& u, VarMap& vm, const Request& r) {
  ClauseSet out;
  for (const VpkgAtom& a : r.install) {
    out.push_back(provider_vars(u, vm, a));  // empty -> immediate UNSAT
  }
  for (const VpkgAtom& a : r.remove) {
    for (Lit x : provider_vars(u, vm, a)) out.push_back({-x});
  }
  for (const VpkgAtom& a : r.upgrade) {
    // (i) some provider with the requested name installed
    std::vector<Lit> named;
    for (const PackageId& q : u.providers(a)) {
      if (q.name == a.name) named.push_back(vm.var(q));
    }
    out.push_back(named);

    const std::vector<Version>* versions = u.versions_of(a.name);
    if (!versions) continue;
    // (ii) nothing older than the newest initially installed version
    Version max_initial = 0;
    bool any_initial = false;
    for (Version v : *versions) {
      const PackageStanza* p = u.find({a.name, v});
      if (p && p->installed && (!any_initial || v > max_initial)) {
        max_initial = v;
        any_initial = true;
      }
    }
    std::vector<Lit> all;
    for (Version v : *versions) {
      Lit x = vm.var({a.name, v});
      all.push_back(x);
      if (any_initial && v < max_initial) out.push_back({-x});
    }
    // (iii) at most one version of the name
    for (Clause& c : at_most_one(all, vm)) out.push_back(std::move(c));
  }
  return out;
}

ClauseSet encode_keep(const Universe& u, const VarMap& vm) {
  ClauseSet out;
  for (const PackageStanza& p : u.stanzas()) {
    if (!p.installed || p.keep == KeepLevel::None) continue;
    switch (p.keep) {
      case KeepLevel::Version:
        out.push_back({vm.var(p.id)});
        break;
      case KeepLevel::Package: {
        Clause c;
        for (Version v : *u.versions_of(p.id.name)) c.push_back(vm.var({p.id.name, v}));
        out.push_back(std::move(c));
        break;
      }
      case KeepLevel::Feature:
        for (const ProvidedFeature& f : p.provides) {
          VpkgAtom atom{f.name, f.version ? std::optional<VersionConstraint>(
                                                VersionConstraint{RelOp::Eq, *f.version})
                                          : std::nullopt};
          out.push_back(provider_vars(u, vm, atom));
        }
        break;
      case KeepLevel::None:
        break;
    }
  }
  return out;
}

namespace {

// aux <-> (l1 | l2 | ... | ln), two-sided.
void define_or(ClauseSet& out, Lit aux, const std::vector<Lit>& lits) {
  Clause c;
  c.push_back(-aux);
  c.insert(c.end(), lits.begin(), lits.end());
  out.push_back(std::move(c));
  for (Lit l : lits) out.push_back({aux, -l});
}

}  // namespace

ObjectiveLayer build_objective(const Universe& u, VarMap& vm, const Criterion& c) {
  ObjectiveLayer layer;
  layer.sense = c.sense;
  const std::set<PackageId> initial = u.initial_installation();
  auto is_initial = [&](const PackageName& n, Version v) {
    return initial.count({n, v}) != 0;
  };

  switch (c.measure) {
    case Measure::Removed:
      for (const auto& [name, versions] : u.name_index()) {
        bool any = std::any_of(versions.begin(), versions.end(),
                               [&](Version v) { return is_initial(name, v); });
        if (!any) continue;
        Lit aux = vm.new_aux();
        std::vector<Lit> xs;
        for (Version v : versions) xs.push_back(vm.var({name, v}));
        // aux <-> none of the versions installed
        Clause c1;
        c1.push_back(aux);
        c1.insert(c1.end(), xs.begin(), xs.end());
        layer.defining_clauses.push_back(std::move(c1));
        for (Lit x : xs) layer.defining_clauses.push_back({-aux, -x});
        layer.terms.emplace_back(1, aux);
      }
      break;

    case Measure::New:
      for (const auto& [name, versions] : u.name_index()) {
        bool any = std::any_of(versions.begin(), versions.end(),
                               [&](Version v) { return is_initial(name, v); });
        if (any) continue;
        Lit aux = vm.new_aux();
        std::vector<Lit> xs;
        for (Version v : versions) xs.push_back(vm.var({name, v}));
        define_or(layer.defining_clauses, aux, xs);
        layer.terms.emplace_back(1, aux);
      }
      break;

    case Measure::Changed:
      for (const auto& [name, versions] : u.name_index()) {
        Lit aux = vm.new_aux();
        std::vector<Lit> diffs;
        for (Version v : versions) {
          Lit x = vm.var({name, v});
          diffs.push_back(is_initial(name, v) ? -x : x);
        }
        define_or(layer.defining_clauses, aux, diffs);
        layer.terms.emplace_back(1, aux);
      }
      break;

    case Measure::NotUpToDate:
      for (const auto& [name, versions] : u.name_index()) {
        if (versions.size() < 2) continue;
        Lit x_max = vm.var({name, versions.back()});
        std::vector<Lit> older;
        for (std::size_t i = 0; i + 1 < versions.size(); ++i) {
          older.push_back(vm.var({name, versions[i]}));
        }
        Lit aux = vm.new_aux();
        // aux <-> (some older version installed) & !newest
        layer.defining_clauses.push_back({-aux, -x_max});
        Clause c1;
        c1.push_back(-aux);
        c1.insert(c1.end(), older.begin(), older.end());
        layer.defining_clauses.push_back(std::move(c1));
        for (Lit x : older) layer.defining_clauses.push_back({aux, x_max, -x});
        layer.terms.emplace_back(1, aux);
      }
      break;

    case Measure::UnsatRecommends:
      for (const PackageStanza& p : u.stanzas()) {
        Lit xp = vm.var(p.id);
        for (const Disjunct& d : p.recommends.conjuncts) {
          std::vector<Lit> prov;
          std::set<Lit> dedup;
          bool self_satisfied = false;
          for (const VpkgAtom& a : d) {
            for (Lit q : provider_vars(u, vm, a)) {
              if (q == xp) {
                self_satisfied = true;
                break;
              }
              if (dedup.insert(q).second) prov.push_back(q);
            }
            if (self_satisfied) break;
          }
          if (self_satisfied) continue;
          Lit aux = vm.new_aux();
          // aux <-> p installed & conjunct unsatisfied
          layer.defining_clauses.push_back({-aux, xp});
          for (Lit q : prov) layer.defining_clauses.push_back({-aux, -q});
          Clause c1;
          c1.push_back(aux);
          c1.push_back(-xp);
          c1.insert(c1.end(), prov.begin(), prov.end());
          layer.defining_clauses.push_back(std::move(c1));
          layer.terms.emplace_back(1, aux);
        }
      }
      break;
  }
  return layer;
}

Totalizer Totalizer::build(std::span<const Lit> lits, int cap, VarMap& vm) {
  Totalizer result;
  if (lits.empty() || cap <= 0) return result;

  // Recursive balanced merge; node outputs are unary counters capped at cap.
  struct Builder {
    int cap;
    VarMap& vm;
    ClauseSet& out;

    std::vector<Lit> run(std::span<const Lit> ls) {
      if (ls.size() == 1) return {ls[0]};
      std::size_t mid = ls.size() / 2;
      std::vector<Lit> a = run(ls.subspan(0, mid));
      std::vector<Lit> b = run(ls.subspan(mid));
      return merge(a, b);
    }

    std::vector<Lit> merge(const std::vector<Lit>& a, const std::vector<Lit>& b) {
      int p = static_cast<int>(a.size());
      int q = static_cast<int>(b.size());
      int r = std::min(p + q, cap);
      std::vector<Lit> c(static_cast<std::size_t>(r));
      for (Lit& x : c) x = vm.new_aux();
      // sum >= sigma propagation
      for (int sigma = 1; sigma <= r; ++sigma) {
        for (int alpha = std::max(0, sigma - q); alpha <= std::min(p, sigma);
             ++alpha) {
          int beta = sigma - alpha;
          Clause cl;
          if (alpha > 0) cl.push_back(-a[alpha - 1]);
          if (beta > 0) cl.push_back(-b[beta - 1]);
          cl.push_back(c[sigma - 1]);
          out.push_back(std::move(cl));
        }
      }
      // sum < sigma propagation (makes the outputs exact)
      for (int sigma = 0; sigma < r; ++sigma) {
        for (int alpha = std::max(0, sigma - q); alpha <= std::min(p, sigma);
             ++alpha) {
          int beta = sigma - alpha;
          Clause cl;
          if (alpha + 1 <= p) cl.push_back(a[alpha]);
          if (beta + 1 <= q) cl.push_back(b[beta]);
          if (cl.empty()) continue;
          cl.push_back(-c[sigma]);
          out.push_back(std::move(cl));
        }
      }
      return c;
    }
  };

  Builder builder{cap, vm, result.clauses};
  result.outputs = builder.run(lits);
  return result;
}

ClauseSet cardinality_leq(const std::vector<std::pair<std::int64_t, Lit>>& terms,
                          std::int64_t bound, VarMap& vm) {
  if (bound < 0) throw std::invalid_argument("bound must be nonnegative");
  std::vector<Lit> lits;
  std::int64_t total = 0;
  for (const auto& [w, l] : terms) {
    if (w < 1) throw std::invalid_argument("weights must be positive");
    total += w;
    for (std::int64_t i = 0; i < w; ++i) lits.push_back(l);
  }
  if (bound >= total) return {};
  if (bound == 0) {
    ClauseSet out;
    std::set<Lit> dedup;
    for (const auto& [w, l] : terms) {
      if (dedup.insert(l).second) out.push_back({-l});
    }
    return out;
  }
  Totalizer tot = Totalizer::build(lits, static_cast<int>(bound) + 1, vm);
  ClauseSet out = std::move(tot.clauses);
  out.push_back({-tot.outputs[static_cast<std::size_t>(bound)]});
  return out;
}

Solution solution_of_model(const VarMap& vm, const sat::Result& model) {
  Solution s;
  for (int v = 1; v <= vm.package_count(); ++v) {
    if (model.model[static_cast<std::size_t>(v)]) s.installed.insert(*vm.package_of(v));
  }
  return s;
}

std::string to_dimacs(const ClauseSet& clauses, int num_vars) {
  return sat::write_dimacs(num_vars, clauses);
}

}  // namespace depsolve::encoder

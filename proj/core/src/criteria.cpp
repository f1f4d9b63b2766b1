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

#include "depsolve/criteria.hpp"

#include <algorithm>
#include <map>

namespace depsolve {

std::string to_string(Measure m) {
  switch (m) {
    case Measure::Removed: return "removed";
    case Measure::New: return "new";
    case Measure::Changed: return "changed";
    case Measure::NotUpToDate: return "notuptodate";
    case Measure::UnsatRecommends: return "unsat_recommends";
  }
  return "?";
}

CriteriaParseError::CriteriaParseError(std::size_t pos, const std::string& tok)
    : std::runtime_error("bad criteria token '" + tok + "' at position " +
                         std::to_string(pos)),
      position(pos),
      token(tok) {}

namespace {

bool measure_from_name(const std::string& name, Measure& out) {
  if (name == "removed") out = Measure::Removed;
  else if (name == "new") out = Measure::New;
  else if (name == "changed") out = Measure::Changed;
  else if (name == "notuptodate") out = Measure::NotUpToDate;
  else if (name == "unsat_recommends") out = Measure::UnsatRecommends;
  else return false;
  return true;
}

}  // namespace

CriteriaList parse_criteria(const std::string& text) {
  std::string t = text;
  if (t == "paranoid") t = "-removed,-changed";
  else if (t == "trendy") t = "-removed,-notuptodate,-unsat_recommends,-new";

  CriteriaList out;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t comma = t.find(',', pos);
    std::string item =
        t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.empty() || (item[0] != '-' && item[0] != '+')) {
      throw CriteriaParseError(pos, item);
    }
    Criterion c;
    c.sense = item[0] == '-' ? Criterion::Sense::Minimize
                             : Criterion::Sense::Maximize;
    if (!measure_from_name(item.substr(1), c.measure)) {
      throw CriteriaParseError(pos, item);
    }
    out.push_back(c);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw CriteriaParseError(0, text);
  return out;
}

std::string to_string(const CriteriaList& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ',';
    out += c[i].sense == Criterion::Sense::Minimize ? '-' : '+';
    out += to_string(c[i].measure);
  }
  return out;
}

namespace {

std::map<PackageName, std::set<Version>> versions_by_name(
    const std::set<PackageId>& ids) {
  std::map<PackageName, std::set<Version>> out;
  for (const PackageId& id : ids) out[id.name].insert(id.version);
  return out;
}

}  // namespace

std::int64_t evaluate(Measure m, const Universe& u, const Solution& s) {
  const auto initial = versions_by_name(u.initial_installation());
  const auto current = versions_by_name(s.installed);

  switch (m) {
    case Measure::Removed: {
      std::int64_t n = 0;
      for (const auto& [name, vs] : initial) {
        if (!current.count(name)) ++n;
      }
      return n;
    }
    case Measure::New: {
      std::int64_t n = 0;
      for (const auto& [name, vs] : current) {
        if (!initial.count(name)) ++n;
      }
      return n;
    }
    case Measure::Changed: {
      std::int64_t n = 0;
      for (const auto& [name, vs] : initial) {
        auto it = current.find(name);
        if (it == current.end() || it->second != vs) ++n;
      }
      for (const auto& [name, vs] : current) {
        if (!initial.count(name)) ++n;
      }
      return n;
    }
    case Measure::NotUpToDate: {
      std::int64_t n = 0;
      for (const auto& [name, vs] : current) {
        const auto* avail = u.versions_of(name);
        if (avail && !avail->empty() && *vs.rbegin() < avail->back()) ++n;
      }
      return n;
    }
    case Measure::UnsatRecommends: {
      std::int64_t n = 0;
      for (const PackageId& id : s.installed) {
        const PackageStanza* p = u.find(id);
        if (!p) continue;
        for (const Disjunct& d : p->recommends.conjuncts) {
          bool sat = std::any_of(d.begin(), d.end(), [&](const VpkgAtom& a) {
            return u.atom_satisfied(a, s.installed);
          });
          if (!sat) ++n;
        }
      }
      return n;
    }
  }
  return 0;
}

std::vector<std::int64_t> objective_vector(const Universe& u,
                                           const CriteriaList& c,
                                           const Solution& s) {
  std::vector<std::int64_t> out;
  out.reserve(c.size());
  for (const Criterion& crit : c) out.push_back(evaluate(crit.measure, u, s));
  return out;
}

Ordering compare(const CriteriaList& c, const Universe& u, const Solution& s1,
                 const Solution& s2) {
  for (const Criterion& crit : c) {
    std::int64_t v1 = evaluate(crit.measure, u, s1);
    std::int64_t v2 = evaluate(crit.measure, u, s2);
    if (v1 == v2) continue;
    bool first_better = crit.sense == Criterion::Sense::Minimize ? v1 < v2 : v1 > v2;
    return first_better ? Ordering::FirstBetter : Ordering::SecondBetter;
  }
  return Ordering::Equal;
}

}  // namespace depsolve

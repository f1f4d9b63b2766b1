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

#include "depsolve/semver.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace depsolve::semver {

namespace fs = std::filesystem;
using nlohmann::json;

SemverParseError::SemverParseError(const std::string& w) : std::runtime_error(w) {}
TranslateError::TranslateError(const std::string& w) : std::runtime_error(w) {}
MappingGap::MappingGap(const PackageId& id)
    : std::runtime_error("solution id not in version mapping: " + to_string(id)) {}

namespace {

std::int64_t parse_number(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw SemverParseError("bad version number '" + s + "'");
  }
  return std::stoll(s);
}

}  // namespace

SemverVersion parse_semver(const std::string& text) {
  std::string core = text;
  std::optional<std::string> qualifier;
  if (std::size_t dash = text.find('-'); dash != std::string::npos) {
    core = text.substr(0, dash);
    qualifier = text.substr(dash + 1);
    if (qualifier->empty()) throw SemverParseError("empty qualifier in '" + text + "'");
  }
  std::vector<std::string> parts;
  std::string cur;
  for (char c : core) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.empty() || parts.size() > 3) {
    throw SemverParseError("bad semver '" + text + "'");
  }
  SemverVersion v;
  v.major = parse_number(parts[0]);
  if (parts.size() > 1) v.minor = parse_number(parts[1]);
  if (parts.size() > 2) v.patch = parse_number(parts[2]);
  v.qualifier = qualifier;
  return v;
}

std::string to_string(const SemverVersion& v) {
  std::string out = std::to_string(v.major) + "." + std::to_string(v.minor) +
                    "." + std::to_string(v.patch);
  if (v.qualifier) out += "-" + *v.qualifier;
  return out;
}

namespace {

bool sv_rel(RelOp op, const SemverVersion& v, const SemverVersion& ref) {
  auto c = v <=> ref;
  switch (op) {
    case RelOp::Eq: return c == 0;
    case RelOp::Neq: return c != 0;
    case RelOp::Geq: return c >= 0;
    case RelOp::Gt: return c > 0;
    case RelOp::Leq: return c <= 0;
    case RelOp::Lt: return c < 0;
  }
  return false;
}

// Parses a version-shaped token: `*`, `4.*`, `4.3.*`, or a semver.
RangePrimitive parse_version_token(const std::string& tok) {
  RangePrimitive p;
  if (tok == "*") {
    p.kind = RangePrimitive::Kind::Any;
    return p;
  }
  if (tok.size() >= 2 && tok.ends_with(".*")) {
    std::string head = tok.substr(0, tok.size() - 2);
    int dots = static_cast<int>(std::count(head.begin(), head.end(), '.'));
    if (dots > 1) throw SemverParseError("bad wildcard '" + tok + "'");
    p.kind = RangePrimitive::Kind::Wildcard;
    p.wildcard_level = dots + 1;
    p.version = parse_semver(head);
    return p;
  }
  p.kind = RangePrimitive::Kind::Compare;
  p.op = RelOp::Eq;
  p.version = parse_semver(tok);
  return p;
}

std::vector<std::string> whitespace_tokens(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<RangePrimitive> parse_conjunction(const std::string& text) {
  std::vector<RangePrimitive> prims;
  std::vector<std::string> raw = whitespace_tokens(text);
  // Re-split tokens that glue an operator to a version (`>=1.2.3`).
  std::vector<std::string> toks;
  for (const std::string& t : raw) {
    std::size_t oplen = 0;
    if (t.starts_with(">=") || t.starts_with("<=") || t.starts_with("!=")) oplen = 2;
    else if (t[0] == '>' || t[0] == '<' || t[0] == '=') oplen = 1;
    if (oplen > 0 && t.size() > oplen) {
      toks.push_back(t.substr(0, oplen));
      toks.push_back(t.substr(oplen));
    } else {
      toks.push_back(t);
    }
  }
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    RelOp op;
    bool is_op = true;
    if (t == ">=") op = RelOp::Geq;
    else if (t == ">") op = RelOp::Gt;
    else if (t == "<=") op = RelOp::Leq;
    else if (t == "<") op = RelOp::Lt;
    else if (t == "=") op = RelOp::Eq;
    else if (t == "!=") op = RelOp::Neq;
    else is_op = false;

    if (is_op) {
      if (i + 1 >= toks.size()) throw SemverParseError("dangling operator in range");
      RangePrimitive v = parse_version_token(toks[++i]);
      RangePrimitive p;
      p.kind = RangePrimitive::Kind::Compare;
      p.op = op;
      // A comparator against a wildcard compares against its lower bound.
      if (v.kind == RangePrimitive::Kind::Wildcard) {
        p.version = v.version;
      } else if (v.kind == RangePrimitive::Kind::Any) {
        p.version = SemverVersion{0, 0, 0, std::nullopt};
      } else {
        p.version = v.version;
      }
      prims.push_back(p);
    } else if (t[0] == '^' || t[0] == '~') {
      RangePrimitive p;
      p.kind = t[0] == '^' ? RangePrimitive::Kind::Caret : RangePrimitive::Kind::Tilde;
      p.version = parse_semver(t.substr(1));
      prims.push_back(p);
    } else {
      prims.push_back(parse_version_token(t));
    }
  }
  return prims;
}

}  // namespace

RangeExpr parse_range(const std::string& text) {
  RangeExpr r;
  std::string t = text;
  if (t.empty()) return r;  // empty = anything
  std::size_t pos = 0;
  for (;;) {
    std::size_t bar = t.find("||", pos);
    std::string part =
        t.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos);
    r.disjuncts.push_back(parse_conjunction(part));
    if (bar == std::string::npos) break;
    pos = bar + 2;
  }
  // `*` alone denotes everything; normalize to the empty disjunct list.
  if (r.disjuncts.size() == 1 && r.disjuncts[0].size() == 1 &&
      r.disjuncts[0][0].kind == RangePrimitive::Kind::Any) {
    r.disjuncts.clear();
  }
  return r;
}

bool primitive_matches(const RangePrimitive& p, const SemverVersion& v) {
  switch (p.kind) {
    case RangePrimitive::Kind::Any:
      return true;
    case RangePrimitive::Kind::Compare:
      return sv_rel(p.op, v, p.version);
    case RangePrimitive::Kind::Wildcard: {
      SemverVersion lo = p.version;
      SemverVersion hi = p.version;
      if (p.wildcard_level == 1) {
        hi.major += 1;
        hi.minor = hi.patch = 0;
      } else {
        hi.minor += 1;
        hi.patch = 0;
      }
      return v >= lo && v < hi;
    }
    case RangePrimitive::Kind::Caret: {
      SemverVersion hi{p.version.major + 1, 0, 0, std::nullopt};
      return v >= p.version && v < hi;
    }
    case RangePrimitive::Kind::Tilde: {
      SemverVersion hi{p.version.major, p.version.minor + 1, 0, std::nullopt};
      return v >= p.version && v < hi;
    }
  }
  return false;
}

bool range_matches(const RangeExpr& r, const SemverVersion& v) {
  if (r.disjuncts.empty()) return true;
  for (const auto& conj : r.disjuncts) {
    bool all = std::all_of(conj.begin(), conj.end(), [&](const RangePrimitive& p) {
      return primitive_matches(p, v);
    });
    if (all) return true;
  }
  return false;
}

namespace {

// Matching ranks compiled to CUDF atoms over existing ranks only.
std::vector<VpkgAtom> compile_range(const std::string& dep_name,
                                    const RangeExpr& range,
                                    const Registry& reg,
                                    const VersionMapping& vm) {
  auto reg_it = reg.entries.find(dep_name);
  if (reg_it == reg.entries.end()) {
    return {VpkgAtom{dep_name, std::nullopt}};  // unknown name: unsatisfiable
  }
  const auto& ranks = vm.to_rank.at(dep_name);
  std::vector<Version> matching;
  for (const auto& [sv, rank] : ranks) {
    if (range_matches(range, sv)) matching.push_back(rank);
  }
  Version max_rank = static_cast<Version>(ranks.size());
  if (matching.empty()) {
    return {VpkgAtom{dep_name, VersionConstraint{RelOp::Lt, 1}}};
  }
  bool contiguous = matching.back() - matching.front() + 1 ==
                    static_cast<Version>(matching.size());
  if (contiguous) {
    Version lo = matching.front(), hi = matching.back();
    if (lo == 1 && hi == max_rank) return {VpkgAtom{dep_name, std::nullopt}};
    if (lo == hi) return {VpkgAtom{dep_name, VersionConstraint{RelOp::Eq, lo}}};
    if (lo == 1) return {VpkgAtom{dep_name, VersionConstraint{RelOp::Leq, hi}}};
    if (hi == max_rank) return {VpkgAtom{dep_name, VersionConstraint{RelOp::Geq, lo}}};
  }
  std::vector<VpkgAtom> out;
  for (Version r : matching) {
    out.push_back(VpkgAtom{dep_name, VersionConstraint{RelOp::Eq, r}});
  }
  return out;
}

}  // namespace

std::pair<cudf::CudfDocument, VersionMapping> translate(
    const Manifest& m, const Registry& reg,
    const std::optional<Lockfile>& installed,
    const std::set<std::string>& active_qualifiers, RequestKind req_kind) {
  VersionMapping vm;
  for (const auto& [name, versions] : reg.entries) {
    if (!valid_package_name(name)) {
      throw TranslateError("registry name not CUDF-compatible: '" + name + "'");
    }
    std::map<SemverVersion, Version>& ranks = vm.to_rank[name];
    for (const auto& [sv, manifest] : versions) {
      if (ranks.count(sv)) {
        throw TranslateError("duplicate registry version " + name + " " +
                             to_string(sv));
      }
      ranks[sv] = 0;  // placeholder; ranked below in order
    }
    Version next = 1;
    for (auto& [sv, rank] : ranks) {
      rank = next++;
      vm.from_rank[{name, rank}] = {name, sv};
    }
  }

  std::string root_name = m.name.empty() ? "root" : m.name;
  while (reg.entries.count(root_name)) root_name += "+root";
  vm.root = {root_name, 1};

  cudf::CudfDocument doc;
  auto add_dependency_conjuncts = [&](VpkgFormula& formula,
                                      const std::map<std::string, RangeExpr>& deps) {
    for (const auto& [dep_name, range] : deps) {
      formula.conjuncts.push_back(compile_range(dep_name, range, reg, vm));
    }
  };
  auto add_conflict_atoms = [&](std::vector<VpkgAtom>& atoms,
                                const std::map<std::string, RangeExpr>& conflicts) {
    for (const auto& [dep_name, range] : conflicts) {
      for (VpkgAtom a : compile_range(dep_name, range, reg, vm)) {
        atoms.push_back(std::move(a));
      }
    }
  };

  for (const auto& [name, versions] : reg.entries) {
    // stanzas in rank order
    std::vector<std::pair<SemverVersion, const Manifest*>> sorted;
    for (const auto& [sv, manifest] : versions) sorted.emplace_back(sv, &manifest);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [sv, manifest] : sorted) {
      PackageStanza stanza;
      stanza.id = {name, vm.to_rank.at(name).at(sv)};
      add_dependency_conjuncts(stanza.depends, manifest->dependencies);
      for (const std::string& tag : active_qualifiers) {
        auto it = manifest->qualified_dependencies.find(tag);
        if (it != manifest->qualified_dependencies.end()) {
          add_dependency_conjuncts(stanza.depends, it->second);
        }
      }
      // single version per name (self-exemption spares this stanza itself)
      stanza.conflicts.push_back(VpkgAtom{name, std::nullopt});
      add_conflict_atoms(stanza.conflicts, manifest->conflicts);
      if (installed) {
        auto it = installed->resolved.find(name);
        stanza.installed = it != installed->resolved.end() && it->second == sv;
      }
      doc.packages.push_back(std::move(stanza));
    }
  }

  PackageStanza root;
  root.id = vm.root;
  add_dependency_conjuncts(root.depends, m.dependencies);
  for (const std::string& tag : active_qualifiers) {
    auto it = m.qualified_dependencies.find(tag);
    if (it != m.qualified_dependencies.end()) {
      add_dependency_conjuncts(root.depends, it->second);
    }
  }
  add_conflict_atoms(root.conflicts, m.conflicts);
  doc.packages.push_back(std::move(root));

  Request req;
  VpkgAtom root_atom{root_name, std::nullopt};
  if (req_kind == RequestKind::Install) req.install.push_back(root_atom);
  else req.upgrade.push_back(root_atom);
  doc.request = req;

  return {std::move(doc), std::move(vm)};
}

Lockfile lift_solution(const Solution& s, const VersionMapping& vm,
                       const Manifest& m, const CriteriaList& c) {
  Lockfile lock;
  lock.generated_from = m.name + "@" + to_string(m.version);
  lock.criteria = to_string(c);
  for (const PackageId& id : s.installed) {
    if (id == vm.root) continue;
    auto it = vm.from_rank.find(id);
    if (it == vm.from_rank.end()) throw MappingGap(id);
    lock.resolved[it->second.first] = it->second.second;
  }
  return lock;
}

namespace {

std::map<std::string, RangeExpr> ranges_from_json(const json& j) {
  std::map<std::string, RangeExpr> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out[it.key()] = parse_range(it.value().get<std::string>());
  }
  return out;
}

Manifest manifest_from_json(const json& j, const std::string& default_name) {
  Manifest m;
  m.name = j.value("name", default_name);
  if (j.contains("version")) m.version = parse_semver(j["version"].get<std::string>());
  if (j.contains("dependencies")) m.dependencies = ranges_from_json(j["dependencies"]);
  if (j.contains("qualified_dependencies")) {
    for (auto it = j["qualified_dependencies"].begin();
         it != j["qualified_dependencies"].end(); ++it) {
      m.qualified_dependencies[it.key()] = ranges_from_json(it.value());
    }
  }
  if (j.contains("conflicts")) m.conflicts = ranges_from_json(j["conflicts"]);
  if (m.dependencies.count(m.name)) {
    throw SemverParseError("manifest '" + m.name + "' depends on itself");
  }
  return m;
}

}  // namespace

Manifest load_manifest(const std::string& json_text) {
  return manifest_from_json(json::parse(json_text), "");
}

Registry load_registry_dir(const std::string& dir_path) {
  Registry reg;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir_path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& file : files) {
    std::ifstream in(file);
    json j = json::parse(in);
    std::string name = j.value("name", file.stem().string());
    for (const json& vj : j.at("versions")) {
      Manifest m = manifest_from_json(vj, name);
      m.name = name;
      reg.entries[name].emplace_back(m.version, m);
    }
  }
  return reg;
}

std::string lockfile_to_json(const Lockfile& lock) {
  json j;
  j["generated_from"] = lock.generated_from;
  j["criteria"] = lock.criteria;
  json resolved = json::object();
  for (const auto& [name, sv] : lock.resolved) resolved[name] = to_string(sv);
  j["resolved"] = resolved;
  return j.dump(2) + "\n";
}

Lockfile lockfile_from_json(const std::string& json_text) {
  json j = json::parse(json_text);
  Lockfile lock;
  lock.generated_from = j.value("generated_from", "");
  lock.criteria = j.value("criteria", "");
  if (j.contains("resolved")) {
    for (auto it = j["resolved"].begin(); it != j["resolved"].end(); ++it) {
      lock.resolved[it.key()] = parse_semver(it.value().get<std::string>());
    }
  }
  return lock;
}

}  // namespace depsolve::semver

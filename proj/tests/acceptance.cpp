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

// Acceptance gate: ten end-to-end guarantees, one PASS/FAIL line each.
// Exit status 0 iff every criterion holds. Tolerances are pinned below.

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "depsolve/checker.hpp"
#include "depsolve/cudf.hpp"
#include "depsolve/encoder.hpp"
#include "depsolve/generator.hpp"
#include "depsolve/optimizer.hpp"
#include "depsolve/oracle.hpp"
#include "depsolve/sat.hpp"
#include "depsolve/semver.hpp"
#include "mini_dpll.hpp"

using namespace depsolve;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and corpus sizes.
constexpr int kOracleInstances = 300;      // criterion 1/3: exact agreement
constexpr int kMaxOracleIds = 12;
constexpr int kSatRandomCnfs = 500;        // criterion 5: n <= 16, exact
constexpr int kSatHardCnfs = 50;           // criterion 5: n = 60 3-CNFs
constexpr int kBridgeInstances = 100;      // criterion 7: exact objectives
constexpr int kScalePackages = 10000;      // criterion 10
constexpr double kScaleBudgetSeconds = 30.0;

const char* kCriteriaLists[] = {"paranoid", "trendy", "-changed,-removed",
                                "+new,-removed"};

struct Instance {
  Universe u;
  Request r;
};

Instance corpus_instance(std::uint64_t seed, int n) {
  gen::UniverseParams p;
  p.n_packages = n;
  Instance inst;
  inst.u = gen::gen_universe(p, seed);
  inst.r = gen::gen_request(inst.u, gen::RequestShape::Mixed, seed + 1);
  return inst;
}

// The small-instance corpus shared by criteria 1, 3 and 4.
std::vector<Instance> oracle_corpus() {
  std::vector<Instance> out;
  std::uint64_t seed = 1;
  while (static_cast<int>(out.size()) < kOracleInstances) {
    Instance inst = corpus_instance(seed, 6 + static_cast<int>(seed % 7));
    if (static_cast<int>(inst.u.size()) <= kMaxOracleIds) {
      out.push_back(std::move(inst));
    }
    ++seed;
  }
  return out;
}

bool clause_sat(const std::vector<sat::Lit>& clause, std::uint32_t assignment) {
  for (sat::Lit l : clause) {
    int v = l > 0 ? l : -l;
    bool val = (assignment >> (v - 1)) & 1u;
    if (l > 0 ? val : !val) return true;
  }
  return false;
}

bool enumerate_sat(int n, const std::vector<std::vector<sat::Lit>>& clauses) {
  for (std::uint32_t a = 0; a < (1u << n); ++a) {
    bool all = true;
    for (const auto& c : clauses) {
      if (!clause_sat(c, a)) { all = false; break; }
    }
    if (all) return true;
  }
  return false;
}

std::vector<std::vector<sat::Lit>> random_cnf(int n, int m, int k,
                                              gen::SplitMix64& rng) {
  std::vector<std::vector<sat::Lit>> clauses;
  for (int i = 0; i < m; ++i) {
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < k) {
      vars.insert(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    }
    std::vector<sat::Lit> c;
    for (int v : vars) c.push_back(rng.next() & 1 ? v : -v);
    clauses.push_back(std::move(c));
  }
  return clauses;
}

struct RunOutput {
  int exit_code = -1;
  std::string text;
};

RunOutput run_command(const std::string& cmd) {
  RunOutput out;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) {
    out.text.append(buf.data(), n);
  }
  int status = pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

// ---------------------------------------------------------------------------

bool criterion_oracle_optimality(const std::vector<Instance>& corpus) {
  for (const Instance& inst : corpus) {
    for (const char* cl : kCriteriaLists) {
      CriteriaList c = parse_criteria(cl);
      oracle::OptimalResult truth = oracle::brute_force(inst.u, inst.r, c);
      optimizer::SolveResult res = optimizer::solve_upgrade(inst.u, inst.r, c);
      if (!truth.feasible) {
        if (res.kind != optimizer::SolveResult::Kind::NoSolution) return false;
        continue;
      }
      if (res.kind != optimizer::SolveResult::Kind::Solution) return false;
      if (res.objective != truth.optimum) return false;
    }
  }
  return true;
}

bool criterion_correctness(const std::vector<Instance>& corpus) {
  auto solutions_valid = [](const Instance& inst) {
    for (const char* cl : kCriteriaLists) {
      optimizer::SolveResult res =
          optimizer::solve_upgrade(inst.u, inst.r, parse_criteria(cl));
      if (res.kind == optimizer::SolveResult::Kind::Solution &&
          !checker::check(inst.u, inst.r, *res.solution).valid()) {
        return false;
      }
    }
    return true;
  };
  for (const Instance& inst : corpus) {
    if (!solutions_valid(inst)) return false;
  }
  for (std::uint64_t seed : {101u, 102u, 103u}) {
    if (!solutions_valid(corpus_instance(seed, 1000))) return false;
  }
  return true;
}

bool criterion_completeness(const std::vector<Instance>& corpus) {
  for (const Instance& inst : corpus) {
    CriteriaList c = parse_criteria("paranoid");
    bool oracle_feasible = oracle::brute_force(inst.u, inst.r, c).feasible;
    optimizer::SolveResult res = optimizer::solve_upgrade(inst.u, inst.r, c);
    bool solver_feasible = res.kind == optimizer::SolveResult::Kind::Solution;
    if (res.kind == optimizer::SolveResult::Kind::Unknown) return false;
    if (oracle_feasible != solver_feasible) return false;
  }
  return true;
}

bool criterion_encoding_fidelity(const std::vector<Instance>& corpus) {
  const Measure all[] = {Measure::Removed, Measure::New, Measure::Changed,
                         Measure::NotUpToDate, Measure::UnsatRecommends};
  for (const Instance& inst : corpus) {
    encoder::VarMap vm(inst.u);
    encoder::ClauseSet clauses = encoder::encode_universe(inst.u, vm);
    encoder::ClauseSet req = encoder::encode_request(inst.u, vm, inst.r);
    encoder::ClauseSet keep = encoder::encode_keep(inst.u, vm);
    clauses.insert(clauses.end(), req.begin(), req.end());
    clauses.insert(clauses.end(), keep.begin(), keep.end());

    encoder::VarMap ovm(inst.u);
    encoder::ClauseSet obj_clauses;
    std::vector<encoder::ObjectiveLayer> layers;
    for (Measure m : all) {
      layers.push_back(
          encoder::build_objective(inst.u, ovm, {Criterion::Sense::Minimize, m}));
      const auto& def = layers.back().defining_clauses;
      obj_clauses.insert(obj_clauses.end(), def.begin(), def.end());
    }

    const int p = vm.package_count();
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
      Solution s;
      for (int v = 1; v <= p; ++v) {
        if ((mask >> (v - 1)) & 1u) s.installed.insert(*vm.package_of(v));
      }
      bool valid = checker::check(inst.u, inst.r, s).valid();

      testutil::MiniDpll dpll(clauses, vm.var_count());
      for (int v = 1; v <= p; ++v) {
        dpll.assign[static_cast<std::size_t>(v)] =
            ((mask >> (v - 1)) & 1u) ? 1 : -1;
      }
      if (dpll.search() != valid) return false;

      testutil::MiniDpll odpll(obj_clauses, ovm.var_count());
      for (int v = 1; v <= p; ++v) {
        odpll.assign[static_cast<std::size_t>(v)] =
            ((mask >> (v - 1)) & 1u) ? 1 : -1;
      }
      if (!odpll.search()) return false;
      for (std::size_t i = 0; i < layers.size(); ++i) {
        std::int64_t sum = 0;
        for (auto [w, lit] : layers[i].terms) {
          if (odpll.value(lit) > 0) sum += w;
        }
        if (sum != evaluate(all[i], inst.u, s)) return false;
      }
    }
  }
  return true;
}

bool criterion_sat_core() {
  gen::SplitMix64 rng(0xacce97ed);
  for (int trial = 0; trial < kSatRandomCnfs; ++trial) {
    int n = 4 + static_cast<int>(rng.below(13));
    int m = n + static_cast<int>(rng.below(static_cast<std::uint64_t>(4 * n)));
    int k = 2 + static_cast<int>(rng.below(2));
    auto clauses = random_cnf(n, m, k, rng);
    bool expected = enumerate_sat(n, clauses);
    sat::Solver s;
    s.ensure_vars(n);
    for (auto c : clauses) s.add_clause(std::move(c));
    sat::Result r = s.solve();
    if (r.status == sat::Status::Unknown) return false;
    if ((r.status == sat::Status::Sat) != expected) return false;
  }
  for (int trial = 0; trial < kSatHardCnfs; ++trial) {
    const int n = 60;
    auto clauses = random_cnf(n, 256, 3, rng);
    sat::Solver s;
    s.ensure_vars(n);
    for (auto c : clauses) s.add_clause(std::move(c));
    sat::Result r = s.solve();
    if (r.status == sat::Status::Unknown) return false;
    if (r.status == sat::Status::Sat) {
      for (const auto& c : clauses) {
        bool ok = false;
        for (sat::Lit l : c) {
          if (r.value(l)) { ok = true; break; }
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

bool criterion_cudf_round_trip() {
  // Byte fixpoint on the canonical generated corpus.
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    gen::UniverseParams p;
    p.n_packages = 25;
    Universe u = gen::gen_universe(p, seed);
    cudf::CudfDocument doc;
    doc.packages = u.stanzas();
    doc.request = gen::gen_request(u, gen::RequestShape::Mixed, seed + 1);
    std::string once = cudf::print_document(doc);
    if (cudf::print_document(cudf::parse_document(once)) != once) return false;
  }
  // Semantic equality on tolerant inputs.
  const std::pair<const char*, const char*> tolerant[] = {
      {"package: a\r\nversion:    1\r\n", "package: a\nversion: 1\n"},
      {"# leading comment\npackage: a\nversion: 1\ndepends: b|c\n\n"
       "package: b\nversion: 1\n\npackage: c\nversion: 1\n",
       "package: a\nversion: 1\ndepends: b | c\n\n"
       "package: b\nversion: 1\n\npackage: c\nversion: 1\n"},
  };
  for (const auto& [messy, canonical] : tolerant) {
    if (cudf::print_document(cudf::parse_document(messy)) != canonical) {
      return false;
    }
  }
  return true;
}

bool criterion_bridge_equivalence() {
  fs::path dir = fs::temp_directory_path() /
                 ("depsolve-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  bool ok = true;
  for (int i = 0; i < kBridgeInstances && ok; ++i) {
    std::uint64_t seed = 500 + static_cast<std::uint64_t>(i);
    Instance inst = corpus_instance(seed, 15);
    cudf::CudfDocument doc;
    doc.packages = inst.u.stanzas();
    doc.request = inst.r;
    fs::path problem = dir / ("p" + std::to_string(i) + ".cudf");
    std::ofstream(problem) << cudf::print_document(doc);

    optimizer::SolveResult direct =
        optimizer::solve_upgrade(inst.u, inst.r, parse_criteria("paranoid"));
    RunOutput bridged = run_command(std::string(DEPSOLVE_BIN) + " solve " +
                                    problem.string() + " --external '" +
                                    DEPSOLVE_BIN + " solve' --out /dev/null");
    if (direct.kind == optimizer::SolveResult::Kind::Solution) {
      std::string expected = "objective:";
      for (std::int64_t v : direct.objective) {
        expected += " " + std::to_string(v);
      }
      ok = bridged.exit_code == 0 &&
           bridged.text.find(expected) != std::string::npos;
    } else {
      ok = bridged.exit_code == 1;
    }
  }
  fs::remove_all(dir);
  return ok;
}

bool criterion_editor_tool_fixture() {
  // An editor helper is requested on a system with an established compiler
  // toolchain; minimizing (changed, removed) must leave every installed
  // package outside the tool's dependency cone untouched.
  const char* text =
      "package: ocaml\nversion: 1\ninstalled: true\n\n"
      "package: dune\nversion: 1\ndepends: ocaml\ninstalled: true\n\n"
      "package: dune\nversion: 2\ndepends: ocaml\n\n"
      "package: merlin\nversion: 1\ndepends: ocaml, yojson, csexp\n\n"
      "package: yojson\nversion: 1\ndepends: ocaml\n\n"
      "package: csexp\nversion: 1\ndepends: ocaml\n\n"
      "package: lwt\nversion: 1\ndepends: ocaml\ninstalled: true\n\n"
      "package: lwt\nversion: 2\ndepends: ocaml\n\n"
      "package: cmdliner\nversion: 1\ndepends: ocaml\ninstalled: true\n\n"
      "request: \ninstall: merlin\n";
  cudf::CudfDocument doc = cudf::parse_document(text);
  Universe u = Universe::build(doc.packages);
  Request r = *doc.request;
  CriteriaList c = parse_criteria("-changed,-removed");

  optimizer::SolveResult res = optimizer::solve_upgrade(u, r, c);
  if (res.kind != optimizer::SolveResult::Kind::Solution) return false;
  if (!checker::check(u, r, *res.solution).valid()) return false;

  oracle::OptimalResult truth = oracle::brute_force(u, r, c);
  if (!truth.feasible || res.objective != truth.optimum) return false;

  // Dependency cone of the requested tool plus the tool itself.
  const std::set<PackageName> cone = {"merlin", "ocaml", "yojson", "csexp"};
  for (const PackageId& before : u.initial_installation()) {
    if (cone.count(before.name)) continue;
    if (!res.solution->installed.count(before)) return false;  // removed/changed
  }
  return true;
}

bool criterion_semver_adapter() {
  semver::Registry reg;
  auto add = [&](const std::string& name, const std::string& version,
                 std::map<std::string, std::string> deps = {}) {
    semver::Manifest m;
    m.name = name;
    m.version = semver::parse_semver(version);
    for (const auto& [d, range] : deps) {
      m.dependencies[d] = semver::parse_range(range);
    }
    reg.entries[name].emplace_back(m.version, m);
  };
  add("libfoo", "1.2.0");
  add("libfoo", "1.9.0");
  add("libfoo", "1.9.6-rc1");
  add("libfoo", "2.0.0");
  add("libfoo", "2.4.1");
  add("libbar", "0.3.0", {{"libfoo", "^1.2.0"}});
  add("libbar", "1.0.0", {{"libfoo", ">= 2.0.0"}});
  add("tools", "3.1.4", {{"libfoo", "1.9.* || 2.4.*"}});

  semver::Manifest root;
  root.name = "app";
  root.version = semver::parse_semver("0.1.0");
  root.dependencies["libbar"] = semver::parse_range("*");
  root.dependencies["tools"] = semver::parse_range("~3.1.0");

  auto [doc, vm] =
      semver::translate(root, reg, std::nullopt, {}, semver::RequestKind::Install);
  Universe u = Universe::build(doc.packages);

  // Exhaustive range/atom agreement on every registry version.
  auto all_manifests = [&]() {
    std::vector<const semver::Manifest*> ms{&root};
    for (const auto& [name, versions] : reg.entries) {
      for (const auto& [v, m] : versions) ms.push_back(&m);
    }
    return ms;
  }();
  for (const semver::Manifest* m : all_manifests) {
    for (const auto& [dep, range] : m->dependencies) {
      // Recover the compiled disjunct from the translated stanza.
      const PackageStanza* stanza =
          m == &root ? u.find(vm.root)
                     : u.find({m->name, vm.to_rank.at(m->name).at(m->version)});
      if (!stanza) return false;
      const Disjunct* compiled = nullptr;
      for (const Disjunct& d : stanza->depends.conjuncts) {
        if (!d.empty() && d.front().name == dep) compiled = &d;
      }
      if (!compiled) return false;
      for (const auto& [svv, rank] : vm.to_rank.at(dep)) {
        bool atom_hit = false;
        for (const VpkgAtom& a : *compiled) {
          if (u.atom_satisfied(a, {{dep, rank}})) { atom_hit = true; break; }
        }
        if (atom_hit != semver::range_matches(range, svv)) return false;
      }
    }
  }

  // Lockfile versions satisfy their originating ranges.
  CriteriaList c = parse_criteria("trendy");
  optimizer::SolveResult res = optimizer::solve_upgrade(u, *doc.request, c);
  if (res.kind != optimizer::SolveResult::Kind::Solution) return false;
  semver::Lockfile lock = semver::lift_solution(*res.solution, vm, root, c);
  for (const auto& [dep, range] : root.dependencies) {
    if (!lock.resolved.count(dep)) return false;
    if (!semver::range_matches(range, lock.resolved.at(dep))) return false;
  }
  for (const auto& [name, locked] : lock.resolved) {
    for (const auto& [rv, rm] : reg.entries.at(name)) {
      if (rv != locked) continue;
      for (const auto& [dep, range] : rm.dependencies) {
        if (!lock.resolved.count(dep)) return false;
        if (!semver::range_matches(range, lock.resolved.at(dep))) return false;
      }
    }
  }
  return true;
}

bool criterion_scale(double* seconds_out) {
  gen::UniverseParams p;
  p.n_packages = kScalePackages;
  Universe u = gen::gen_universe(p, 2026);
  Request r = gen::gen_request(u, gen::RequestShape::Mixed, 2027);
  auto start = std::chrono::steady_clock::now();
  optimizer::SolveResult res =
      optimizer::solve_upgrade(u, r, parse_criteria("paranoid"));
  auto stop = std::chrono::steady_clock::now();
  double secs = std::chrono::duration<double>(stop - start).count();
  *seconds_out = secs;
  if (res.kind == optimizer::SolveResult::Kind::Unknown) return false;
  if (res.kind == optimizer::SolveResult::Kind::Solution &&
      !checker::check(u, r, *res.solution).valid()) {
    return false;
  }
  // Outcome must be reproducible.
  optimizer::SolveResult again =
      optimizer::solve_upgrade(u, r, parse_criteria("paranoid"));
  if (again.kind != res.kind || again.objective != res.objective) return false;
  return secs < kScaleBudgetSeconds;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int idx, const char* name, bool ok,
                    const std::string& extra = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << idx << ". " << name;
    if (!extra.empty()) std::cout << " (" << extra << ")";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
  };

  std::vector<Instance> corpus = oracle_corpus();

  report(1, "oracle optimality on the small-instance corpus",
         criterion_oracle_optimality(corpus));
  report(2, "correctness: every emitted solution passes the checker",
         criterion_correctness(corpus));
  report(3, "completeness: feasibility verdicts match the oracle",
         criterion_completeness(corpus));
  report(4, "encoding fidelity by exhaustive model enumeration",
         criterion_encoding_fidelity(corpus));
  report(5, "SAT solver agreement and model soundness", criterion_sat_core());
  report(6, "CUDF parse/print round-trip", criterion_cudf_round_trip());
  report(7, "external bridge reproduces in-process objectives",
         criterion_bridge_equivalence());
  report(8, "editor-tool fixture leaves unrelated packages untouched",
         criterion_editor_tool_fixture());
  report(9, "semver ranges agree with compiled atoms and lockfiles",
         criterion_semver_adapter());
  double secs = 0;
  bool scale_ok = criterion_scale(&secs);
  {
    std::ostringstream extra;
    extra.precision(2);
    extra << std::fixed << secs << " s, budget " << kScaleBudgetSeconds << " s";
    report(10, "10k-package universe solves within budget", scale_ok,
           extra.str());
  }

  return failures == 0 ? 0 : 1;
}

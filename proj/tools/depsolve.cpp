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

// depsolve: CUDF dependency solver front end.
//
// Exit codes: 0 solution / valid / sat; 1 no solution / invalid / unsat;
// 2 I/O, parse or subprocess error; 3 unknown (budget or timeout).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "depsolve/bench.hpp"
#include "depsolve/checker.hpp"
#include "depsolve/criteria.hpp"
#include "depsolve/cudf.hpp"
#include "depsolve/generator.hpp"
#include "depsolve/optimizer.hpp"
#include "depsolve/oracle.hpp"
#include "depsolve/sat.hpp"
#include "depsolve/semver.hpp"

namespace {

namespace ds = depsolve;
namespace fs = std::filesystem;

constexpr int kExitSolution = 0;
constexpr int kExitNoSolution = 1;
constexpr int kExitError = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct Problem {
  ds::Universe universe;
  ds::Request request;
};

Problem load_problem(const std::string& path) {
  ds::cudf::CudfDocument doc = ds::cudf::parse_document(read_file(path));
  Problem p;
  p.universe = ds::Universe::build(std::move(doc.packages));
  if (doc.request) p.request = *doc.request;
  return p;
}

std::string objective_string(const std::vector<std::int64_t>& vec) {
  std::string out;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(vec[i]);
  }
  return out;
}

// Runs `argv[0] argv[1...]`; returns the child's exit code, or -1 on
// timeout (child killed).
int run_subprocess(const std::vector<std::string>& argv, double timeout_s) {
  std::vector<char*> cargs;
  for (const std::string& a : argv) cargs.push_back(const_cast<char*>(a.c_str()));
  cargs.push_back(nullptr);

  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork failed");
  if (pid == 0) {
    // The child must not bridge again, or a self-referential CUDF_SOLVER
    // would recurse forever.
    unsetenv("CUDF_SOLVER");
    execvp(cargs[0], cargs.data());
    _exit(127);
  }
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(timeout_s);
  for (;;) {
    int status = 0;
    pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) {
      if (WIFEXITED(status)) return WEXITSTATUS(status);
      return kExitError;
    }
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      return -1;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

std::vector<std::string> split_command(const std::string& cmd) {
  std::vector<std::string> out;
  std::istringstream in(cmd);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int solve_external(const std::string& external_cmd, const std::string& problem_path,
                   const Problem& problem, const std::string& criteria_str,
                   const std::string& out_path, double timeout_s) {
  fs::path tmp_out =
      fs::temp_directory_path() /
      ("depsolve-bridge-" + std::to_string(::getpid()) + ".cudf");
  std::vector<std::string> argv = split_command(external_cmd);
  if (argv.empty()) {
    std::cerr << "error: empty external solver command\n";
    return kExitError;
  }
  argv.push_back(problem_path);
  argv.push_back(tmp_out.string());
  argv.push_back(criteria_str);

  int rc = run_subprocess(argv, timeout_s);
  if (rc == -1) {
    std::cerr << "error: external solver timed out\n";
    fs::remove(tmp_out);
    return kExitUnknown;
  }
  if (rc != kExitSolution && rc != kExitNoSolution) {
    std::cerr << "error: external solver exited with status " << rc << "\n";
    fs::remove(tmp_out);
    return kExitError;
  }
  ds::cudf::SolveReply reply = ds::cudf::parse_solution(read_file(tmp_out.string()),
                                                        problem.universe);
  fs::remove(tmp_out);
  if (reply.failed()) {
    write_output(out_path, ds::cudf::print_solution(reply));
    return kExitNoSolution;
  }
  // Trust nothing the solver says.
  ds::checker::CheckReport report =
      ds::checker::check(problem.universe, problem.request, *reply.solution);
  if (!report.valid()) {
    std::cerr << "error: external solver returned an invalid solution:\n";
    for (const std::string& line : report.lines()) std::cerr << "  " << line << "\n";
    return kExitError;
  }
  ds::CriteriaList criteria = ds::parse_criteria(criteria_str);
  std::cerr << "objective: "
            << objective_string(
                   ds::objective_vector(problem.universe, criteria, *reply.solution))
            << "\n";
  write_output(out_path, ds::cudf::print_solution(reply));
  return kExitSolution;
}

int cmd_solve(const std::string& problem_path, std::string out_path,
              std::string criteria_str, std::string external,
              std::int64_t budget, double timeout_s,
              bool allow_env_external = true) {
  Problem problem = load_problem(problem_path);
  if (external.empty() && allow_env_external) {
    if (const char* env = std::getenv("CUDF_SOLVER"); env && *env) external = env;
  }
  if (!external.empty()) {
    return solve_external(external, problem_path, problem, criteria_str, out_path,
                          timeout_s);
  }
  ds::CriteriaList criteria = ds::parse_criteria(criteria_str);
  ds::optimizer::SolveResult res = ds::optimizer::solve_upgrade(
      problem.universe, problem.request, criteria, {budget});
  switch (res.kind) {
    case ds::optimizer::SolveResult::Kind::Solution:
      std::cerr << "objective: " << objective_string(res.objective) << "\n";
      write_output(out_path, ds::cudf::print_solution({res.solution}));
      return kExitSolution;
    case ds::optimizer::SolveResult::Kind::NoSolution:
      write_output(out_path, ds::cudf::print_solution({std::nullopt}));
      return kExitNoSolution;
    case ds::optimizer::SolveResult::Kind::Unknown:
      std::cerr << "warning: conflict budget exhausted";
      if (res.solution) {
        std::cerr << "; best feasible objective "
                  << objective_string(res.objective) << "\n";
        write_output(out_path, ds::cudf::print_solution({res.solution}));
      } else {
        std::cerr << "\n";
      }
      return kExitUnknown;
  }
  return kExitError;
}

int cmd_check(const std::string& problem_path, const std::string& solution_path) {
  Problem problem = load_problem(problem_path);
  ds::cudf::SolveReply reply =
      ds::cudf::parse_solution(read_file(solution_path), problem.universe);
  if (reply.failed()) {
    std::cout << "solution document is FAIL\n";
    return kExitNoSolution;
  }
  ds::checker::CheckReport report =
      ds::checker::check(problem.universe, problem.request, *reply.solution);
  if (report.valid()) return kExitSolution;
  for (const std::string& line : report.lines()) std::cout << line << "\n";
  return kExitNoSolution;
}

int cmd_oracle(const std::string& problem_path, const std::string& out_path,
               const std::string& criteria_str, std::size_t cap) {
  Problem problem = load_problem(problem_path);
  ds::CriteriaList criteria = ds::parse_criteria(criteria_str);
  ds::oracle::OptimalResult res =
      ds::oracle::brute_force(problem.universe, problem.request, criteria, cap);
  if (!res.feasible) {
    write_output(out_path, ds::cudf::print_solution({std::nullopt}));
    return kExitNoSolution;
  }
  std::cerr << "objective: " << objective_string(res.optimum) << "\n";
  std::cerr << "co-optimal solutions: " << res.optimal_set.size() << "\n";
  write_output(out_path, ds::cudf::print_solution({res.optimal_set.front()}));
  return kExitSolution;
}

int cmd_sat(const std::string& cnf_path, const std::string& out_path,
            std::int64_t budget) {
  ds::sat::DimacsProblem problem = ds::sat::parse_dimacs(read_file(cnf_path));
  ds::sat::Solver solver;
  solver.ensure_vars(problem.num_vars);
  for (auto& c : problem.clauses) solver.add_clause(std::move(c));
  solver.set_conflict_budget(budget);
  ds::sat::Result res = solver.solve();
  std::string out;
  int rc;
  switch (res.status) {
    case ds::sat::Status::Sat: {
      out = "s SATISFIABLE\n";
      std::string vline = "v";
      for (int v = 1; v <= problem.num_vars; ++v) {
        vline += res.model[static_cast<std::size_t>(v)] ? " " + std::to_string(v)
                                                        : " -" + std::to_string(v);
      }
      out += vline + " 0\n";
      rc = kExitSolution;
      break;
    }
    case ds::sat::Status::Unsat:
      out = "s UNSATISFIABLE\n";
      rc = kExitNoSolution;
      break;
    default:
      out = "s UNKNOWN\n";
      rc = kExitUnknown;
      break;
  }
  write_output(out_path, out);
  return rc;
}

int cmd_gen(int packages, std::uint64_t seed, const ds::gen::UniverseParams& base,
            const std::string& request_kind, const std::string& out_path) {
  ds::gen::UniverseParams params = base;
  params.n_packages = packages;
  ds::Universe u = ds::gen::gen_universe(params, seed);
  ds::cudf::CudfDocument doc;
  doc.packages = u.stanzas();
  if (request_kind != "none") {
    ds::gen::RequestShape shape;
    if (request_kind == "install") shape = ds::gen::RequestShape::Install;
    else if (request_kind == "remove") shape = ds::gen::RequestShape::Remove;
    else if (request_kind == "upgrade") shape = ds::gen::RequestShape::Upgrade;
    else shape = ds::gen::RequestShape::Mixed;
    doc.request = ds::gen::gen_request(u, shape, seed + 1);
  }
  write_output(out_path, ds::cudf::print_document(doc));
  return kExitSolution;
}

int cmd_translate(const std::string& manifest_path, const std::string& registry_dir,
                  const std::string& lockfile_path, const std::string& qualifiers,
                  const std::string& kind, const std::string& out_path) {
  ds::semver::Manifest m = ds::semver::load_manifest(read_file(manifest_path));
  ds::semver::Registry reg = ds::semver::load_registry_dir(registry_dir);
  std::optional<ds::semver::Lockfile> lock;
  if (!lockfile_path.empty()) {
    lock = ds::semver::lockfile_from_json(read_file(lockfile_path));
  }
  std::set<std::string> tags;
  std::istringstream qs(qualifiers);
  std::string tag;
  while (std::getline(qs, tag, ',')) {
    if (!tag.empty()) tags.insert(tag);
  }
  auto [doc, mapping] = ds::semver::translate(
      m, reg, lock, tags,
      kind == "upgrade" ? ds::semver::RequestKind::Upgrade
                        : ds::semver::RequestKind::Install);
  write_output(out_path, ds::cudf::print_document(doc));
  return kExitSolution;
}

int cmd_resolve(const std::string& manifest_path, const std::string& registry_dir,
                const std::string& lockfile_path, const std::string& qualifiers,
                const std::string& kind, const std::string& criteria_str,
                const std::string& out_path) {
  ds::semver::Manifest m = ds::semver::load_manifest(read_file(manifest_path));
  ds::semver::Registry reg = ds::semver::load_registry_dir(registry_dir);
  std::optional<ds::semver::Lockfile> lock;
  if (!lockfile_path.empty()) {
    lock = ds::semver::lockfile_from_json(read_file(lockfile_path));
  }
  std::set<std::string> tags;
  std::istringstream qs(qualifiers);
  std::string tag;
  while (std::getline(qs, tag, ',')) {
    if (!tag.empty()) tags.insert(tag);
  }
  auto [doc, mapping] = ds::semver::translate(
      m, reg, lock, tags,
      kind == "upgrade" ? ds::semver::RequestKind::Upgrade
                        : ds::semver::RequestKind::Install);
  ds::Universe u = ds::Universe::build(doc.packages);
  ds::CriteriaList criteria = ds::parse_criteria(criteria_str);
  ds::optimizer::SolveResult res =
      ds::optimizer::solve_upgrade(u, *doc.request, criteria, {});
  if (res.kind != ds::optimizer::SolveResult::Kind::Solution) {
    std::cerr << "error: no solution for manifest\n";
    return kExitNoSolution;
  }
  ds::semver::Lockfile out_lock =
      ds::semver::lift_solution(*res.solution, mapping, m, criteria);
  write_output(out_path, ds::semver::lockfile_to_json(out_lock));
  return kExitSolution;
}

int cmd_bench(const std::string& sizes_str, const std::string& seeds_str,
              const std::string& criteria_str, const std::string& csv_path) {
  std::vector<int> sizes;
  std::istringstream ss(sizes_str);
  std::string tok;
  while (std::getline(ss, tok, ',')) sizes.push_back(std::stoi(tok));
  std::vector<std::uint64_t> seeds;
  std::istringstream ts(seeds_str);
  while (std::getline(ts, tok, ',')) seeds.push_back(std::stoull(tok));
  ds::bench::BenchReport report =
      ds::bench::run_bench(sizes, seeds, ds::parse_criteria(criteria_str));
  std::cout << report.to_text();
  if (!csv_path.empty()) write_output(csv_path, report.to_csv());
  return kExitSolution;
}

}  // namespace

int main(int argc, char** argv) {
  // External-solver calling convention: `depsolve solve <problem> <out>
  // <criteria>`. The criteria string starts with - or +, so this form is
  // dispatched before option parsing. It always solves in process.
  if (argc == 5 && std::string(argv[1]) == "solve" && argv[2][0] != '-' &&
      argv[3][0] != '-') {
    try {
      return cmd_solve(argv[2], argv[3], argv[4], "", 1000000, 60.0,
                       /*allow_env_external=*/false);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitError;
    }
  }

  CLI::App app{"CUDF dependency solver"};
  app.require_subcommand(1);

  // solve
  std::string problem_path, out_path, criteria_str = "paranoid", external;
  std::int64_t budget = 1000000;
  double timeout_s = 60.0;
  auto* solve = app.add_subcommand(
      "solve", "Solve a CUDF upgrade problem (also callable as an external "
               "CUDF solver: solve <problem> <out> <criteria>)");
  solve->add_option("problem", problem_path, "CUDF problem document")->required();
  solve->add_option("--criteria", criteria_str, "criteria string");
  solve->add_option("--out", out_path, "output file (default stdout)");
  solve->add_option("--external", external,
                    "external solver command (default $CUDF_SOLVER)");
  solve->add_option("--budget", budget, "conflict budget");
  solve->add_option("--timeout", timeout_s, "external solver timeout, seconds");

  // check
  std::string check_problem, check_solution;
  auto* check = app.add_subcommand("check", "Validate a solution document");
  check->add_option("problem", check_problem)->required();
  check->add_option("solution", check_solution)->required();

  // oracle
  std::string oracle_problem, oracle_out, oracle_criteria = "paranoid";
  std::size_t oracle_cap = 20;
  auto* oracle = app.add_subcommand("oracle",
                                    "Brute-force optimum for small instances");
  oracle->add_option("problem", oracle_problem)->required();
  oracle->add_option("--criteria", oracle_criteria);
  oracle->add_option("--out", oracle_out);
  oracle->add_option("--cap", oracle_cap, "max package-versions");

  // sat
  std::string sat_path, sat_out;
  std::int64_t sat_budget = -1;
  auto* satc = app.add_subcommand("sat", "Standalone DIMACS CNF solver");
  satc->add_option("cnf", sat_path)->required();
  satc->add_option("--out", sat_out);
  satc->add_option("--budget", sat_budget, "conflict budget (-1 unlimited)");

  // gen
  int gen_packages = 12;
  std::uint64_t gen_seed = 1;
  std::string gen_request = "mixed", gen_out;
  ds::gen::UniverseParams gp;
  auto* genc = app.add_subcommand("gen", "Generate a random CUDF instance");
  genc->add_option("--packages", gen_packages, "package-version count");
  genc->add_option("--seed", gen_seed);
  genc->add_option("--min-versions", gp.min_versions);
  genc->add_option("--max-versions", gp.max_versions);
  genc->add_option("--dep-density", gp.dep_density);
  genc->add_option("--conflict-density", gp.conflict_density);
  genc->add_option("--installed-fraction", gp.installed_fraction);
  genc->add_option("--request", gen_request,
                   "install|remove|upgrade|mixed|none");
  genc->add_option("--out", gen_out);

  // translate
  std::string tr_manifest, tr_registry, tr_lockfile, tr_qualifiers, tr_out;
  std::string tr_kind = "install";
  auto* translate =
      app.add_subcommand("translate", "Semver manifest + registry -> CUDF");
  translate->add_option("manifest", tr_manifest)->required();
  translate->add_option("--registry", tr_registry)->required();
  translate->add_option("--lockfile", tr_lockfile, "installed state");
  translate->add_option("--qualifiers", tr_qualifiers, "comma-separated tags");
  translate->add_option("--kind", tr_kind, "install|upgrade");
  translate->add_option("--out", tr_out);

  // resolve
  std::string rs_manifest, rs_registry, rs_lockfile, rs_qualifiers, rs_out;
  std::string rs_kind = "install", rs_criteria = "paranoid";
  auto* resolve = app.add_subcommand(
      "resolve", "Translate, solve and emit a lockfile in one step");
  resolve->add_option("manifest", rs_manifest)->required();
  resolve->add_option("--registry", rs_registry)->required();
  resolve->add_option("--lockfile", rs_lockfile, "installed state");
  resolve->add_option("--qualifiers", rs_qualifiers);
  resolve->add_option("--kind", rs_kind, "install|upgrade");
  resolve->add_option("--criteria", rs_criteria);
  resolve->add_option("--out", rs_out, "output lockfile (default stdout)");

  // bench
  std::string bench_sizes = "100,1000", bench_seeds = "1,2,3,4,5";
  std::string bench_criteria = "paranoid", bench_csv;
  auto* bench = app.add_subcommand("bench", "Scalability harness");
  bench->add_option("--sizes", bench_sizes, "comma-separated universe sizes");
  bench->add_option("--seeds", bench_seeds, "comma-separated seeds");
  bench->add_option("--criteria", bench_criteria);
  bench->add_option("--csv", bench_csv, "also write a CSV report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return cmd_solve(problem_path, out_path, criteria_str, external, budget,
                       timeout_s);
    }
    if (check->parsed()) return cmd_check(check_problem, check_solution);
    if (oracle->parsed()) {
      return cmd_oracle(oracle_problem, oracle_out, oracle_criteria, oracle_cap);
    }
    if (satc->parsed()) return cmd_sat(sat_path, sat_out, sat_budget);
    if (genc->parsed()) {
      return cmd_gen(gen_packages, gen_seed, gp, gen_request, gen_out);
    }
    if (translate->parsed()) {
      return cmd_translate(tr_manifest, tr_registry, tr_lockfile, tr_qualifiers,
                           tr_kind, tr_out);
    }
    if (resolve->parsed()) {
      return cmd_resolve(rs_manifest, rs_registry, rs_lockfile, rs_qualifiers,
                         rs_kind, rs_criteria, rs_out);
    }
    if (bench->parsed()) {
      return cmd_bench(bench_sizes, bench_seeds, bench_criteria, bench_csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

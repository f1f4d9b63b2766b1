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

#include <doctest.h>

#include "depsolve/cudf.hpp"
#include "depsolve/generator.hpp"

using namespace depsolve;

TEST_CASE("atom grammar") {
  CHECK(cudf::parse_atom("ocaml") == VpkgAtom{"ocaml", std::nullopt});
  CHECK(cudf::parse_atom("ocaml >= 4") ==
        VpkgAtom{"ocaml", VersionConstraint{RelOp::Geq, 4}});
  CHECK(cudf::parse_atom("ocaml=4") ==
        VpkgAtom{"ocaml", VersionConstraint{RelOp::Eq, 4}});
  CHECK(cudf::parse_atom("x != 2") ==
        VpkgAtom{"x", VersionConstraint{RelOp::Neq, 2}});
  CHECK(cudf::parse_atom("x > 2") ==
        VpkgAtom{"x", VersionConstraint{RelOp::Gt, 2}});
  CHECK(cudf::parse_atom("x <= 2") ==
        VpkgAtom{"x", VersionConstraint{RelOp::Leq, 2}});
  CHECK(cudf::parse_atom("x < 2") ==
        VpkgAtom{"x", VersionConstraint{RelOp::Lt, 2}});
  CHECK_THROWS_AS(cudf::parse_atom("x >="), cudf::ParseError);
  CHECK_THROWS_AS(cudf::parse_atom("x >= banana"), cudf::ParseError);
  CHECK_THROWS_AS(cudf::parse_atom(""), cudf::ParseError);
}

TEST_CASE("formula grammar") {
  CHECK(cudf::parse_formula("true!").is_true());
  CHECK(cudf::parse_formula("false!").is_false());
  VpkgFormula f = cudf::parse_formula("a, b >= 2 | c, d");
  REQUIRE(f.conjuncts.size() == 3);
  CHECK(f.conjuncts[0] == Disjunct{{"a", std::nullopt}});
  CHECK(f.conjuncts[1] ==
        Disjunct{{"b", VersionConstraint{RelOp::Geq, 2}}, {"c", std::nullopt}});
  CHECK(f.conjuncts[2] == Disjunct{{"d", std::nullopt}});
}

TEST_CASE("document parsing") {
  const std::string text =
      "preamble: \n"
      "property: bugs: int = [0]\n"
      "\n"
      "# a comment line\n"
      "package: car\n"
      "version: 1\n"
      "depends: engine, wheel\n"
      "installed: true\n"
      "bugs: 3\n"
      "\n"
      "package: engine\n"
      "version: 2\n"
      "provides: motor = 2\n"
      "conflicts: engine\n"
      "keep: version\n"
      "\n"
      "package: wheel\n"
      "version: 1\n"
      "recommends: hubcap\n"
      "\n"
      "request: \n"
      "install: car\n"
      "upgrade: wheel\n";
  cudf::CudfDocument doc = cudf::parse_document(text);
  REQUIRE(doc.packages.size() == 3);
  CHECK(doc.preamble.has_value());

  const PackageStanza& car = doc.packages[0];
  CHECK(car.id == PackageId{"car", 1});
  CHECK(car.installed);
  CHECK(car.depends.conjuncts.size() == 2);
  REQUIRE(car.extras.size() == 1);
  CHECK(car.extras[0] == std::pair<std::string, std::string>{"bugs", "3"});

  const PackageStanza& engine = doc.packages[1];
  CHECK(engine.keep == KeepLevel::Version);
  REQUIRE(engine.provides.size() == 1);
  CHECK(engine.provides[0].name == "motor");
  CHECK(engine.provides[0].version == 2);
  REQUIRE(engine.conflicts.size() == 1);

  CHECK(doc.packages[2].recommends.conjuncts.size() == 1);

  REQUIRE(doc.request.has_value());
  CHECK(doc.request->install == std::vector<VpkgAtom>{{"car", std::nullopt}});
  CHECK(doc.request->upgrade == std::vector<VpkgAtom>{{"wheel", std::nullopt}});
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("missing version") {
    try {
      cudf::parse_document("package: a\n");
      FAIL("expected ParseError");
    } catch (const cudf::ParseError& e) {
      CHECK(e.line == 1);
    }
  }
  SUBCASE("duplicate field") {
    try {
      cudf::parse_document("package: a\nversion: 1\nversion: 2\n");
      FAIL("expected ParseError");
    } catch (const cudf::ParseError& e) {
      CHECK(e.line == 3);
    }
  }
  SUBCASE("preamble not first") {
    CHECK_THROWS_AS(
        cudf::parse_document("package: a\nversion: 1\n\npreamble: \n"),
        cudf::ParseError);
  }
  SUBCASE("second request") {
    CHECK_THROWS_AS(cudf::parse_document("request: \n\nrequest: \n"),
                    cudf::ParseError);
  }
  SUBCASE("stray line without a colon") {
    CHECK_THROWS_AS(cudf::parse_document("package: a\nversion 1\n"),
                    cudf::ParseError);
  }
}

TEST_CASE("print is a fixpoint and parse-print round-trips") {
  // Canonical corpus: generated universes exercise every field.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    gen::UniverseParams params;
    params.n_packages = 30;
    Universe u = gen::gen_universe(params, seed);
    cudf::CudfDocument doc;
    doc.packages = u.stanzas();
    doc.request = gen::gen_request(u, gen::RequestShape::Mixed, seed + 1);

    std::string once = cudf::print_document(doc);
    cudf::CudfDocument reparsed = cudf::parse_document(once);
    std::string twice = cudf::print_document(reparsed);
    CHECK(once == twice);
  }
}

TEST_CASE("tolerant input prints to canonical form") {
  // CRLF line endings, extra spaces after the colon, comments.
  const std::string messy =
      "package: a\r\n"
      "version:   1\r\n"
      "# noise\r\n"
      "depends: b|c , d\r\n"
      "\r\n"
      "package: b\r\n"
      "version: 1\r\n";
  cudf::CudfDocument doc = cudf::parse_document(messy);
  std::string canonical = cudf::print_document(doc);
  CHECK(canonical ==
        "package: a\n"
        "version: 1\n"
        "depends: b | c, d\n"
        "\n"
        "package: b\n"
        "version: 1\n");
  CHECK(cudf::print_document(cudf::parse_document(canonical)) == canonical);
}

TEST_CASE("defaults are omitted when printing") {
  PackageStanza p;
  p.id = {"plain", 1};
  cudf::CudfDocument doc;
  doc.packages.push_back(p);
  CHECK(cudf::print_document(doc) == "package: plain\nversion: 1\n");
}

TEST_CASE("solution documents") {
  Universe u = Universe::build([] {
    std::vector<PackageStanza> v(2);
    v[0].id = {"a", 1};
    v[1].id = {"b", 2};
    return v;
  }());

  SUBCASE("FAIL marker") {
    cudf::SolveReply r = cudf::parse_solution("FAIL\n", u);
    CHECK(r.failed());
    CHECK(cudf::print_solution(r) == "FAIL\n");
  }
  SUBCASE("installed stanzas only") {
    const std::string text =
        "package: b\nversion: 2\ninstalled: true\n\n"
        "package: a\nversion: 1\ninstalled: false\n";
    cudf::SolveReply r = cudf::parse_solution(text, u);
    REQUIRE_FALSE(r.failed());
    CHECK(r.solution->installed == std::set<PackageId>{{"b", 2}});
  }
  SUBCASE("unknown package rejected") {
    CHECK_THROWS_AS(
        cudf::parse_solution("package: c\nversion: 9\ninstalled: true\n", u),
        UnknownPackage);
  }
  SUBCASE("print sorts by name then version") {
    cudf::SolveReply r;
    r.solution = Solution{{{"b", 2}, {"a", 1}}};
    CHECK(cudf::print_solution(r) ==
          "package: a\nversion: 1\ninstalled: true\n\n"
          "package: b\nversion: 2\ninstalled: true\n");
  }
}

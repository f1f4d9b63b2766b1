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

#ifndef DEPSOLVE_CUDF_HPP
#define DEPSOLVE_CUDF_HPP

#include <optional>
#include <string>
#include <vector>

#include "depsolve/model.hpp"

namespace depsolve::cudf {

/// A parsed CUDF document: optional preamble, package stanzas in input
/// order, optional request stanza.
struct CudfDocument {
  /// Preamble fields in input order; first pair is ("preamble", value).
  std::optional<std::vector<std::pair<std::string, std::string>>> preamble;
  std::vector<PackageStanza> packages;
  std::optional<Request> request;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason);
  int line;
  std::string reason;
};

/// Reads a CUDF document. Tolerant input: CR stripped, `#` comment lines
/// skipped, whitespace after `:` collapsed. Unknown package fields are
/// preserved as opaque extras.
CudfDocument parse_document(const std::string& text);

/// Canonical rendering: fixed field order, default-valued fields omitted,
/// one blank line between stanzas. parse(print(d)) is semantically equal
/// to d, and print is a fixpoint on canonical documents.
std::string print_document(const CudfDocument& doc);

std::string print_formula(const VpkgFormula& f);
std::string print_atom_list(const std::vector<VpkgAtom>& atoms);

/// Parses a `vpkgformula` field value (`true!`, `false!`, or
/// comma-separated disjunctions); `line` is for error reporting.
VpkgFormula parse_formula(const std::string& value, int line = 0);
std::vector<VpkgAtom> parse_atom_list(const std::string& value, int line = 0);
VpkgAtom parse_atom(const std::string& text, int line = 0);

/// A solution document: either an installed set or the explicit FAIL
/// marker for unsatisfiable instances.
struct SolveReply {
  std::optional<Solution> solution;  // nullopt = FAIL

  bool failed() const { return !solution.has_value(); }
};

/// Reads a solution document against the universe it answers. Stanzas
/// with installed false are ignored; "FAIL" parses to the no-solution
/// marker. Throws UnknownPackage for ids outside `u`.
SolveReply parse_solution(const std::string& text, const Universe& u);

/// Canonical stanza per installed id, sorted by (name, version);
/// no-solution prints "FAIL\n".
std::string print_solution(const SolveReply& reply);

}  // namespace depsolve::cudf

#endif  // DEPSOLVE_CUDF_HPP

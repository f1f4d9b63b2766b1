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

#include "depsolve/cudf.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace depsolve::cudf {

ParseError::ParseError(int l, const std::string& r)
    : std::runtime_error("parse error at line " + std::to_string(l) + ": " + r),
      line(l),
      reason(r) {}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '+' ||
         c == '-';
}

Version parse_version_number(const std::string& s, int line) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ParseError(line, "version must be a positive integer, got '" + s + "'");
  }
  Version v = 0;
  for (char c : s) {
    v = v * 10 + (c - '0');
    if (v < 0) throw ParseError(line, "version out of range");
  }
  if (v < 1) throw ParseError(line, "version must be >= 1");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

struct FieldLine {
  int line;
  std::string name;
  std::string value;
};

}  // namespace

VpkgAtom parse_atom(const std::string& text, int line) {
  std::string s = trim(text);
  std::size_t i = 0;
  while (i < s.size() && is_name_char(s[i])) ++i;
  std::string name = s.substr(0, i);
  if (!valid_package_name(name)) {
    throw ParseError(line, "bad package name in '" + s + "'");
  }
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  if (i == s.size()) return {name, std::nullopt};

  RelOp op;
  if (s.compare(i, 2, ">=") == 0) { op = RelOp::Geq; i += 2; }
  else if (s.compare(i, 2, "<=") == 0) { op = RelOp::Leq; i += 2; }
  else if (s.compare(i, 2, "!=") == 0) { op = RelOp::Neq; i += 2; }
  else if (s[i] == '=') { op = RelOp::Eq; i += 1; }
  else if (s[i] == '>') { op = RelOp::Gt; i += 1; }
  else if (s[i] == '<') { op = RelOp::Lt; i += 1; }
  else throw ParseError(line, "bad relational operator in '" + s + "'");

  Version v = parse_version_number(trim(s.substr(i)), line);
  return {name, VersionConstraint{op, v}};
}

std::vector<VpkgAtom> parse_atom_list(const std::string& value, int line) {
  std::vector<VpkgAtom> out;
  if (trim(value).empty()) return out;
  for (const std::string& part : split(value, ',')) {
    out.push_back(parse_atom(part, line));
  }
  return out;
}

VpkgFormula parse_formula(const std::string& value, int line) {
  std::string v = trim(value);
  if (v.empty() || v == "true!") return VpkgFormula::truth();
  if (v == "false!") return VpkgFormula::falsity();
  VpkgFormula f;
  for (const std::string& conj : split(v, ',')) {
    Disjunct d;
    for (const std::string& part : split(conj, '|')) {
      d.push_back(parse_atom(part, line));
    }
    f.conjuncts.push_back(std::move(d));
  }
  return f;
}

namespace {

std::vector<ProvidedFeature> parse_provides(const std::string& value, int line) {
  std::vector<ProvidedFeature> out;
  for (const VpkgAtom& a : parse_atom_list(value, line)) {
    if (a.constraint && a.constraint->op != RelOp::Eq) {
      throw ParseError(line, "provides entries take '=' only");
    }
    ProvidedFeature f{a.name, a.constraint
                                  ? std::optional<Version>(a.constraint->version)
                                  : std::nullopt};
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

PackageStanza parse_package_stanza(const std::vector<FieldLine>& fields) {
  PackageStanza p;
  bool have_name = false, have_version = false;
  std::vector<std::string> seen;
  for (const FieldLine& f : fields) {
    bool known = true;
    if (f.name == "package") {
      if (!valid_package_name(f.value)) {
        throw ParseError(f.line, "bad package name '" + f.value + "'");
      }
      p.id.name = f.value;
      have_name = true;
    } else if (f.name == "version") {
      p.id.version = parse_version_number(f.value, f.line);
      have_version = true;
    } else if (f.name == "depends") {
      p.depends = parse_formula(f.value, f.line);
    } else if (f.name == "conflicts") {
      p.conflicts = parse_atom_list(f.value, f.line);
    } else if (f.name == "provides") {
      p.provides = parse_provides(f.value, f.line);
    } else if (f.name == "recommends") {
      p.recommends = parse_formula(f.value, f.line);
    } else if (f.name == "installed") {
      if (f.value == "true") p.installed = true;
      else if (f.value == "false") p.installed = false;
      else throw ParseError(f.line, "installed must be true or false");
    } else if (f.name == "keep") {
      if (f.value == "version") p.keep = KeepLevel::Version;
      else if (f.value == "package") p.keep = KeepLevel::Package;
      else if (f.value == "feature") p.keep = KeepLevel::Feature;
      else if (f.value == "none") p.keep = KeepLevel::None;
      else throw ParseError(f.line, "bad keep level '" + f.value + "'");
    } else {
      known = false;
      p.extras.emplace_back(f.name, f.value);
    }
    if (known) {
      if (std::find(seen.begin(), seen.end(), f.name) != seen.end()) {
        throw ParseError(f.line, "duplicate field '" + f.name + "'");
      }
      seen.push_back(f.name);
    }
  }
  if (!have_name) throw ParseError(fields.front().line, "missing package field");
  if (!have_version) {
    throw ParseError(fields.front().line, "missing version field");
  }
  return p;
}

Request parse_request_stanza(const std::vector<FieldLine>& fields) {
  Request r;
  for (const FieldLine& f : fields) {
    if (f.name == "request") continue;  // stanza lead; value is an opaque label
    if (f.name == "install") r.install = parse_atom_list(f.value, f.line);
    else if (f.name == "remove") r.remove = parse_atom_list(f.value, f.line);
    else if (f.name == "upgrade") r.upgrade = parse_atom_list(f.value, f.line);
    else throw ParseError(f.line, "unknown request field '" + f.name + "'");
  }
  return r;
}

// Splits input into stanzas of field lines; comments and blank separators
// handled here.
std::vector<std::vector<FieldLine>> scan_stanzas(const std::string& text) {
  std::vector<std::vector<FieldLine>> stanzas;
  std::vector<FieldLine> cur;
  int lineno = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) {
      if (!cur.empty()) stanzas.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    if (raw[0] == '#') continue;
    std::size_t colon = raw.find(':');
    if (colon == std::string::npos) {
      throw ParseError(lineno, "expected 'field: value'");
    }
    std::string name = trim(raw.substr(0, colon));
    if (name.empty() ||
        !std::all_of(name.begin(), name.end(), [](char c) {
          return std::isalnum(static_cast<unsigned char>(c)) || c == '-';
        })) {
      throw ParseError(lineno, "bad field name '" + name + "'");
    }
    cur.push_back({lineno, name, trim(raw.substr(colon + 1))});
  }
  if (!cur.empty()) stanzas.push_back(std::move(cur));
  return stanzas;
}

}  // namespace

CudfDocument parse_document(const std::string& text) {
  CudfDocument doc;
  auto stanzas = scan_stanzas(text);
  for (std::size_t i = 0; i < stanzas.size(); ++i) {
    const auto& fields = stanzas[i];
    const std::string& lead = fields.front().name;
    if (lead == "preamble") {
      if (i != 0) {
        throw ParseError(fields.front().line, "preamble must be first stanza");
      }
      std::vector<std::pair<std::string, std::string>> pre;
      for (const FieldLine& f : fields) pre.emplace_back(f.name, f.value);
      doc.preamble = std::move(pre);
    } else if (lead == "package") {
      doc.packages.push_back(parse_package_stanza(fields));
    } else if (lead == "request") {
      if (doc.request) {
        throw ParseError(fields.front().line, "duplicate request stanza");
      }
      doc.request = parse_request_stanza(fields);
    } else {
      throw ParseError(fields.front().line,
                       "stanza must start with preamble:, package: or request:");
    }
  }
  return doc;
}

std::string print_atom_list(const std::vector<VpkgAtom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ", ";
    out += to_string(atoms[i]);
  }
  return out;
}

std::string print_formula(const VpkgFormula& f) {
  if (f.is_true()) return "true!";
  if (f.is_false()) return "false!";
  std::string out;
  for (std::size_t i = 0; i < f.conjuncts.size(); ++i) {
    if (i) out += ", ";
    for (std::size_t j = 0; j < f.conjuncts[i].size(); ++j) {
      if (j) out += " | ";
      out += to_string(f.conjuncts[i][j]);
    }
  }
  return out;
}

namespace {

void emit_field(std::string& out, const std::string& name,
                const std::string& value) {
  out += name;
  out += ':';
  if (!value.empty()) {
    out += ' ';
    out += value;
  }
  out += '\n';
}

std::string print_package_stanza(const PackageStanza& p) {
  std::string out;
  emit_field(out, "package", p.id.name);
  emit_field(out, "version", std::to_string(p.id.version));
  if (!p.depends.is_true()) emit_field(out, "depends", print_formula(p.depends));
  if (!p.conflicts.empty()) {
    emit_field(out, "conflicts", print_atom_list(p.conflicts));
  }
  if (!p.provides.empty()) {
    std::string v;
    for (std::size_t i = 0; i < p.provides.size(); ++i) {
      if (i) v += ", ";
      v += p.provides[i].name;
      if (p.provides[i].version) {
        v += " = " + std::to_string(*p.provides[i].version);
      }
    }
    emit_field(out, "provides", v);
  }
  if (!p.recommends.is_true()) {
    emit_field(out, "recommends", print_formula(p.recommends));
  }
  if (p.installed) emit_field(out, "installed", "true");
  switch (p.keep) {
    case KeepLevel::None: break;
    case KeepLevel::Version: emit_field(out, "keep", "version"); break;
    case KeepLevel::Package: emit_field(out, "keep", "package"); break;
    case KeepLevel::Feature: emit_field(out, "keep", "feature"); break;
  }
  for (const auto& [k, v] : p.extras) emit_field(out, k, v);
  return out;
}

}  // namespace

std::string print_document(const CudfDocument& doc) {
  std::vector<std::string> blocks;
  if (doc.preamble) {
    std::string b;
    for (const auto& [k, v] : *doc.preamble) emit_field(b, k, v);
    blocks.push_back(std::move(b));
  }
  for (const PackageStanza& p : doc.packages) {
    blocks.push_back(print_package_stanza(p));
  }
  if (doc.request) {
    std::string b;
    emit_field(b, "request", "");
    if (!doc.request->install.empty()) {
      emit_field(b, "install", print_atom_list(doc.request->install));
    }
    if (!doc.request->remove.empty()) {
      emit_field(b, "remove", print_atom_list(doc.request->remove));
    }
    if (!doc.request->upgrade.empty()) {
      emit_field(b, "upgrade", print_atom_list(doc.request->upgrade));
    }
    blocks.push_back(std::move(b));
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += '\n';
    out += blocks[i];
  }
  return out;
}

SolveReply parse_solution(const std::string& text, const Universe& u) {
  // A bare FAIL line is the no-solution sentinel.
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    if (t == "FAIL") return {std::nullopt};
    break;
  }
  CudfDocument doc = parse_document(text);
  Solution s;
  for (const PackageStanza& p : doc.packages) {
    if (!p.installed) continue;
    if (!u.contains(p.id)) throw UnknownPackage(p.id);
    s.installed.insert(p.id);
  }
  return {std::move(s)};
}

std::string print_solution(const SolveReply& reply) {
  if (reply.failed()) return "FAIL\n";
  std::string out;
  bool first = true;
  for (const PackageId& id : reply.solution->installed) {
    if (!first) out += '\n';
    first = false;
    emit_field(out, "package", id.name);
    emit_field(out, "version", std::to_string(id.version));
    emit_field(out, "installed", "true");
  }
  return out;
}

}  // namespace depsolve::cudf

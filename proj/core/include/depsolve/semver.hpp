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

#ifndef DEPSOLVE_SEMVER_HPP
#define DEPSOLVE_SEMVER_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "depsolve/criteria.hpp"
#include "depsolve/cudf.hpp"
#include "depsolve/model.hpp"

namespace depsolve::semver {

/// major.minor.patch with an optional pre-release qualifier; a qualified
/// version orders before its unqualified release.
struct SemverVersion {
  std::int64_t major = 0;
  std::int64_t minor = 0;
  std::int64_t patch = 0;
  std::optional<std::string> qualifier;

  friend bool operator==(const SemverVersion&, const SemverVersion&) = default;
  friend std::strong_ordering operator<=>(const SemverVersion& a,
                                          const SemverVersion& b) {
    if (auto c = a.major <=> b.major; c != 0) return c;
    if (auto c = a.minor <=> b.minor; c != 0) return c;
    if (auto c = a.patch <=> b.patch; c != 0) return c;
    bool aq = a.qualifier.has_value(), bq = b.qualifier.has_value();
    if (aq != bq) return aq ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!aq) return std::strong_ordering::equal;
    return *a.qualifier <=> *b.qualifier;
  }
};

class SemverParseError : public std::runtime_error {
 public:
  explicit SemverParseError(const std::string& what);
};

/// Parses `1.2.3` or `1.2.3-rc1`; missing minor/patch default to 0.
SemverVersion parse_semver(const std::string& text);
std::string to_string(const SemverVersion& v);

/// Range grammar (documented in docs/formats.md):
///   disjuncts separated by `||`, primitives within a disjunct are ANDed;
///   primitives: `*`, `1.2.3` (exact), `= != >= > <= <` comparators,
///   `1.2.*` wildcards, `^1.2.3` (flex minor), `~1.2.3` (flex patch),
///   `>= 1.2.*` (comparator against the wildcard's lower bound).
struct RangePrimitive {
  enum class Kind { Any, Compare, Wildcard, Caret, Tilde };
  Kind kind = Kind::Any;
  RelOp op = RelOp::Eq;     // Compare only
  SemverVersion version;    // lower reference version
  int wildcard_level = 0;   // Wildcard: 1 = `4.*`, 2 = `4.3.*`
};

struct RangeExpr {
  /// OR of ANDs of primitives; empty disjunct list = matches everything.
  std::vector<std::vector<RangePrimitive>> disjuncts;
};

RangeExpr parse_range(const std::string& text);
bool range_matches(const RangeExpr& r, const SemverVersion& v);
bool primitive_matches(const RangePrimitive& p, const SemverVersion& v);

struct Manifest {
  std::string name;
  SemverVersion version;
  std::map<std::string, RangeExpr> dependencies;
  /// qualifier tag (e.g. "test") -> extra dependencies active under it
  std::map<std::string, std::map<std::string, RangeExpr>> qualified_dependencies;
  std::map<std::string, RangeExpr> conflicts;
};

struct Registry {
  /// name -> versions, each with its own manifest
  std::map<std::string, std::vector<std::pair<SemverVersion, Manifest>>> entries;
};

struct Lockfile {
  std::map<std::string, SemverVersion> resolved;
  std::string generated_from;  // manifest identity
  std::string criteria;
};

class TranslateError : public std::runtime_error {
 public:
  explicit TranslateError(const std::string& what);
};

class MappingGap : public std::runtime_error {
 public:
  explicit MappingGap(const PackageId& id);
};

/// Order-preserving rank table between semver versions and CUDF integers,
/// plus the synthetic root package id.
struct VersionMapping {
  std::map<std::string, std::map<SemverVersion, Version>> to_rank;
  std::map<PackageId, std::pair<std::string, SemverVersion>> from_rank;
  PackageId root;
};

enum class RequestKind { Install, Upgrade };

/// Manifest + registry snapshot -> CUDF upgrade problem. Every stanza
/// carries a self-name conflict (single version per name); installed
/// flags come from the lockfile; a synthetic root stanza carries the
/// manifest's (qualifier-gated) dependencies.
std::pair<cudf::CudfDocument, VersionMapping> translate(
    const Manifest& m, const Registry& reg,
    const std::optional<Lockfile>& installed,
    const std::set<std::string>& active_qualifiers, RequestKind req_kind);

/// CUDF solution -> lockfile (root excluded). Throws MappingGap for ids
/// outside the mapping.
Lockfile lift_solution(const Solution& s, const VersionMapping& vm,
                       const Manifest& m, const CriteriaList& c);

/// JSON (de)serialization; schemas in docs/formats.md.
Manifest load_manifest(const std::string& json_text);
Registry load_registry_dir(const std::string& dir_path);
std::string lockfile_to_json(const Lockfile& lock);
Lockfile lockfile_from_json(const std::string& json_text);

}  // namespace depsolve::semver

#endif  // DEPSOLVE_SEMVER_HPP

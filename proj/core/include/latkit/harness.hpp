#pragma once

#include "latkit/glue.hpp"
#include "latkit/json_io.hpp"
#include "latkit/pair_sum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace latkit {

// One worked case: base lattice name, isometry description, and the expected
// invariants as printed, with section tags so the report maps back to the
// source. Flagged cases report printed-vs-recomputed instead of failing.
struct GlueFacts {
  std::string sublattice;  // composite catalog name, first factor sqrt2<base>
  Int index;
  std::optional<std::size_t> glue_count;
};

struct FixtureCase {
  std::string id;
  std::string section;    // z2 | a2 | a3 | a4 | d4 | z5d5
  std::string paper_tag;  // subsection label, e.g. "5.1"
  std::string base;
  IsometrySpec spec;
  Int expect_det;
  std::vector<Int> expect_smith;  // padded with leading 1s up to rank
  std::optional<std::size_t> expect_rank;
  std::optional<std::string> expect_identity;
  std::optional<Int> expect_index_in_ambient;
  std::optional<GlueFacts> glue_facts;
  std::vector<std::string> flags;
};

enum class CaseStatus { pass, fail, flagged };

struct ReportEntry {
  std::string id;
  CaseStatus status = CaseStatus::fail;
  std::string computed;
  std::string expected;
  std::string notes;
};

struct Report {
  std::vector<ReportEntry> cases;

  bool all_ok() const;  // true when nothing failed (flagged entries are fine)
  std::size_t count(CaseStatus s) const;
};

// Fixture file loading. Path resolution: explicit argument, then the
// LATKIT_FIXTURES environment variable, then the built-in default.
std::vector<FixtureCase> load_fixtures(const std::string& path);
std::string default_fixtures_path();

ReportEntry run_fixture(const FixtureCase& c);

// Runs cases (optionally filtered by section) concurrently; the report is
// ordered by id regardless of scheduling.
Report run_fixtures(const std::vector<FixtureCase>& cases, std::size_t jobs = 1);

// Theorem-level suites: the n-cycle, D_n-sublattice, D_n-negation and
// A2-tensor witnesses over their parameter ranges, the h = +-1 shapes, and
// conjugacy invariance with 25 seeded random conjugations per fixture.
Report run_theorem_suites(const std::vector<FixtureCase>& fixtures, std::size_t jobs = 1);

std::string emit_report_text(const Report& r);
json emit_report_json(const Report& r);

// Deterministic random conjugator for a fixture's base lattice (signed
// permutations for Z^n/D_n, coordinate permutations times +-1 for A_n).
Isometry random_conjugator(const Lattice& base, const std::string& base_name, std::uint64_t seed);

// Invariants compared across a conjugacy class: det, Smith, minimal norm,
// minimal-vector count.
struct ConstructionInvariants {
  Rat det;
  std::vector<Int> smith;
  Rat min_norm;
  std::size_t min_count = 0;

  bool operator==(const ConstructionInvariants&) const = default;
};
ConstructionInvariants construction_invariants(const PairSumResult& ps);

FixtureCase fixture_from_json(const json& j);

}  // namespace latkit

#pragma once

// The acceptance suite: ten criteria, each with literal expected values or an
// independent second route, run in-process.

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace kcone::frontend {

struct SelftestOptions {
  std::optional<int> torsion_exponent_cap;  // mutation: 0 breaks every torsion query
  int adjunction_offset = 0;                // mutation: shifts the plane-curve canonical twist
  std::set<int> only;                       // empty: all criteria
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string tolerance;
  bool passed = false;
  std::vector<std::string> details;  // failures first, then notes
};

// Progress lines go to `log` as each criterion finishes.
std::vector<CriterionResult> run_selftest(const SelftestOptions& options, std::ostream* log = nullptr);

// "PASS  3  conic torsion 2-form (exact)" plus indented details.
std::string format_result(const CriterionResult& r);

}  // namespace kcone::frontend

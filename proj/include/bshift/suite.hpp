#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bshift/scenario.hpp"

namespace bshift {

struct SuiteCheck {
  std::string id;
  std::string name;
  bool pass;
  Json details;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed;
  std::vector<SuiteCheck> checks;
  bool all_pass;
};

// The acceptance gate: ten fixed criteria with their thresholds pinned
// here. tolerance_override > 0 replaces the residual-flag tolerance the
// underlying operations use (the pass thresholds stay pinned), which is how
// tolerance sensitivity is demonstrated: forcing 1e-15 makes the division
// and construction flags fire.
SuiteReport run_acceptance(std::uint64_t seed, double tolerance_override = 0.0);

// Module-level invariants exercised with seeded random sweeps.
SuiteReport run_properties(std::uint64_t seed);

// name: acceptance | properties | all
SuiteReport run_suite(const std::string& name, std::uint64_t seed,
                      double tolerance_override = 0.0);

Json suite_report_to_json(const SuiteReport& report);
void print_suite_report(const SuiteReport& report, std::ostream& os);

}  // namespace bshift

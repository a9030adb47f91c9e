// Acceptance gate: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exit code 0 only when all pass.

#include <cstdlib>
#include <iostream>
#include <string>

#include "bshift/suite.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20250817;
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--seed") seed = std::strtoull(argv[i + 1], nullptr, 10);
  }
  bshift::SuiteReport report = bshift::run_acceptance(seed);
  bshift::print_suite_report(report, std::cout);
  return report.all_pass ? 0 : 1;
}

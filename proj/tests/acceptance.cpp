// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "symbif/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char **argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::stoull(argv[1]);
  int failed = 0;
  symbif::acceptance::run_all(seed, [&](const symbif::acceptance::CriterionResult &r) {
    std::cout << symbif::acceptance::format_line(r) << std::endl;
    if (!r.passed) ++failed;
  });
  std::cout << (failed ? "FAILED: " + std::to_string(failed) + " criteria" : std::string("all criteria passed"))
            << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}

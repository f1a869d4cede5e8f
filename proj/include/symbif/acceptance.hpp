#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symbif::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // 0: untimed
};

/// Runs criteria 1..10 in order, reporting each through on_result as soon as
/// it finishes. A criterion over its time limit fails.
std::vector<CriterionResult> run_all(std::uint64_t seed = 0,
                                     const std::function<void(const CriterionResult &)> &on_result = {});

std::string format_line(const CriterionResult &r);

}  // namespace symbif::acceptance

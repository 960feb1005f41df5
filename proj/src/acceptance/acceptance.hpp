#pragma once

#include <string>
#include <vector>

namespace strata::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // what was observed, or the first failure
  double seconds = 0;
};

inline constexpr double kTimeLimitSeconds = 10.0;

/// Runs every acceptance criterion against the bundled fixtures. A criterion
/// that throws or exceeds the time limit fails.
std::vector<CriterionResult> run_all();
CriterionResult run_one(int id);
int criterion_count();

}  // namespace strata::acceptance

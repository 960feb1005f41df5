#include <cstdio>

#include "acceptance/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : strata::acceptance::run_all()) {
    std::printf("[%s] %2d %s (%.2fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds, r.detail.c_str());
    failed += r.passed ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", strata::acceptance::criterion_count() - failed, strata::acceptance::criterion_count());
  return failed == 0 ? 0 : 1;
}

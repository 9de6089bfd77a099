#include <iostream>
#include <string>

#include "asymp/app/acceptance.hpp"

// Usage: acceptance_tests [golden-dir]
int main(int argc, char** argv) {
  asymp::app::AcceptanceOptions options{argc > 1 ? argv[1] : ASYMP_GOLDEN_DIR};
  int failed = 0;
  for (const auto& r : asymp::app::run_acceptance(options)) {
    asymp::app::print_result(std::cout, r);
    if (!r.passed) ++failed;
  }
  std::cout << (asymp::app::kCriterionCount - failed) << "/" << asymp::app::kCriterionCount << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

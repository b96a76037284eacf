#include "fraclimit/harness/acceptance.hpp"

#include <iostream>

int main() {
  try {
    const auto report = fraclimit::harness::run_acceptance();
    fraclimit::harness::print_acceptance(report, std::cout);
    for (const auto& e : report.experiments) {
      std::cout << "  " << e.experiment << ": " << e.runtime_seconds << " s\n";
    }
    return report.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance aborted: " << e.what() << '\n';
    return 2;
  }
}

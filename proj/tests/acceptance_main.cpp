#include <iostream>

#include "volterra/acceptance.hpp"

int main() {
  const auto results = volterra::run_acceptance(std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.passed) ++failures;
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all " << results.size() << " criteria passed\n";
  return 0;
}

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace volterra {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full verification suite (constant identity, closed forms,
/// scaling and g-limits, exact asymptotics, exponent recovery, borderline
/// log correction, Monte Carlo consistency, stationarity/decomposition,
/// regime-table conformance) and streams one pass/fail line per criterion.
std::vector<CriterionResult> run_acceptance(std::ostream& log);

}  // namespace volterra

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "volterra/process.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/theory.hpp"

namespace volterra {

enum class ScanMethod { Quadrature, MonteCarlo };

struct McConfig {
  std::size_t n_paths = 10000;
  std::uint64_t seed = 0;
};

/// Ladder of incremental L2 norms ||U(anchor + h) - U(anchor)||_2 over
/// geometrically decreasing lags. std_errors are zero for quadrature
/// tables and delta-method errors for Monte Carlo ones.
struct IncrementTable {
  ProcessSpec spec;
  double anchor = 0.0;
  std::vector<double> lags;    // strictly decreasing, all > 0
  std::vector<double> sigma;   // all > 0
  std::vector<double> std_errors;
  ScanMethod method = ScanMethod::Quadrature;
};

/// Ordinary least squares of log sigma on log h.
struct FitResult {
  double rho_hat = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Empirical two-sided bound constants over a ladder:
/// c1_hat = min sigma / h^{rho_lower}, c2_hat = max sigma / h^{rho_upper}.
struct BoundCheckResult {
  double c1_hat = 0.0;
  double c2_hat = 0.0;
  std::size_t mesh_size = 0;
};

IncrementTable scan_increments(const ProcessSpec& spec, double anchor,
                               std::size_t lag_count, double lag_ratio,
                               double h_max, ScanMethod method,
                               const McConfig& mc = {},
                               double tol = kDefaultQuadTol);

FitResult fit_exponent(const IncrementTable& table);

BoundCheckResult bound_check(const IncrementTable& table,
                             const RegimeReport& report);

/// Extremes over the ladder of sigma(h)^2 / (h^2 (1 + |log h|)), the
/// borderline alpha = 1/2 scaling. Valid only there.
std::pair<double, double> log_correction_check(const IncrementTable& table);

/// Per-lag ratios sigma(h)^2 / (C(alpha) anchor^{-gamma} h^{2 alpha + 1});
/// the sequence approaches 1 as h decreases in the exact-asymptotics regime.
std::vector<double> asymptotic_ratio_check(const ProcessSpec& spec,
                                           double anchor,
                                           const IncrementTable& table);

}  // namespace volterra

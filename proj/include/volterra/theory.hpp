#pragma once

#include <optional>
#include <string>

#include "volterra/process.hpp"

namespace volterra {

enum class Regime { ExactQuasihelix, Generalized, LogCorrected, Uncovered };

/// Theoretical two-sided exponent classification of ||U(t) - U(s)||_2 on an
/// interval. rho_lower is the exponent in the lower bound, rho_upper the one
/// in the upper bound; rho_lower >= rho_upper always. In the log-corrected
/// borderline both are 1 and the deficit is the factor (1 + |log h|) on the
/// variance, not a power. Uncovered entries carry no exponents.
struct RegimeReport {
  Regime regime = Regime::Uncovered;
  std::optional<double> rho_lower;
  std::optional<double> rho_upper;
  bool requires_t1_positive = false;
  std::string source;
};

/// Leading small-lag behavior of the incremental variance of the
/// power-weighted kernels: constant * anchor_factor * h^power.
struct AsymptoticPrediction {
  double constant = 0.0;       // C(alpha)
  double power = 0.0;          // 2 alpha + 1
  double anchor_factor = 0.0;  // s^{-gamma}

  double predicted_variance(double h) const;
};

/// Deterministic regime table for every kernel kind, keyed on the parameter
/// ranges and on whether the interval touches the origin. Returns Uncovered
/// outside the tabulated hypotheses, never an extrapolated guess.
RegimeReport classify_regime(const ProcessSpec& spec, const Interval& iv);

/// Exact small-lag prediction, valid for the power-weighted kernels with
/// |alpha| < 1/2 (alpha != 0 for the two-sided kind) at anchors s > 0. For
/// the two-sided kind the prediction is derived: the past component
/// contributes O(h^2) = o(h^{2 alpha + 1}).
AsymptoticPrediction asymptotic_increment(const ProcessSpec& spec, double s,
                                          double h);

const char* to_string(Regime regime);

}  // namespace volterra

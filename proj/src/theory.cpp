#include "volterra/theory.hpp"

#include <cmath>

#include "volterra/errors.hpp"
#include "volterra/moments.hpp"

namespace volterra {

namespace {

RegimeReport exact(double rho, bool needs_t1, std::string source) {
  return {Regime::ExactQuasihelix, rho, rho, needs_t1, std::move(source)};
}

RegimeReport generalized(double rho_lo, double rho_up, bool needs_t1,
                         std::string source) {
  return {Regime::Generalized, rho_lo, rho_up, needs_t1, std::move(source)};
}

RegimeReport log_corrected(bool needs_t1, std::string source) {
  return {Regime::LogCorrected, 1.0, 1.0, needs_t1, std::move(source)};
}

RegimeReport uncovered(std::string source) {
  return {Regime::Uncovered, std::nullopt, std::nullopt, false,
          std::move(source)};
}

}  // namespace

double AsymptoticPrediction::predicted_variance(double h) const {
  return constant * anchor_factor * std::pow(h, power);
}

RegimeReport classify_regime(const ProcessSpec& spec, const Interval& iv) {
  const double a = spec.alpha;
  const double g = spec.gamma;
  const bool origin = iv.t1 == 0.0;
  switch (spec.kind) {
    case ProcessKind::Wiener:
      return exact(0.5, false, "wiener reference");
    case ProcessKind::ExpTempered: {
      const char* src = "regime table: exponential-tempered kernel";
      if (a < 0.5) return exact(a + 0.5, false, src);
      if (a == 0.5) return log_corrected(false, src);
      if (!origin) return exact(1.0, true, src);
      return generalized(a + 0.5, 1.0, false, src);
    }
    case ProcessKind::HadamardLog: {
      const char* src = "regime table: logarithmic kernel";
      if (a < 1.0) return generalized(1.0, a, false, src);
      if (a == 1.0) return exact(0.5, false, "wiener reference");
      if (a < 2.0) return generalized(a, 1.0, false, src);
      return generalized(0.5 * a, 0.5, false, src);
    }
    case ProcessKind::PowerWeighted: {
      const char* src = "regime table: power-weighted kernel";
      if (!origin) {
        if (a < 0.5) return exact(a + 0.5, true, src);
        if (a == 0.5) return log_corrected(true, src);
        return exact(1.0, true, src);
      }
      const char* src0 = "regime table: power-weighted kernel on [0,T]";
      if (g > 0.0 && a <= -0.5 + 0.5 * g)
        return uncovered("no tabulated result near the origin singularity");
      if (a < 0.5 + 0.5 * g)
        return generalized(a + 0.5, a + 0.5 * (1.0 - g), false, src0);
      if (a < 1.0) return generalized(a + 0.5, a, false, src0);
      return generalized(a + 0.5, 1.0, false, src0);
    }
    case ProcessKind::TemperedFbm:
    case ProcessKind::TemperedFbmII: {
      const char* src = "regime table: two-sided tempered kernel";
      if (a < 0.5) return exact(a + 0.5, false, src);
      if (a == 0.5) return log_corrected(false, src);
      return exact(1.0, false, src);
    }
    case ProcessKind::PastComponent: {
      if (!origin)
        return exact(1.0, true, "regime table: past power-weighted component");
      return uncovered("past component not tabulated on origin intervals");
    }
    case ProcessKind::PowerWeightedFull: {
      if (origin)
        return uncovered(
            "two-sided power-weighted kernel not tabulated on origin "
            "intervals");
      const char* src = "regime table: two-sided power-weighted kernel";
      if (a < 0.5)
        return exact(a + 0.5, true,
                     std::string(src) +
                         "; small-lag asymptotics derived from the "
                         "zero-started component (past part is O(h^2))");
      if (a == 0.5) return log_corrected(true, src);
      if (a < 0.5 + 0.5 * g) return exact(1.0, true, src);
      return uncovered("two-sided power-weighted kernel beyond alpha < 1/2 + gamma/2");
    }
  }
  throw ValidationError("classify_regime: unknown kind");
}

AsymptoticPrediction asymptotic_increment(const ProcessSpec& spec, double s,
                                          double h) {
  if (spec.kind != ProcessKind::PowerWeighted &&
      spec.kind != ProcessKind::PowerWeightedFull)
    throw RegimeError(
        "asymptotic_increment: defined for the power-weighted kernels only");
  if (!(spec.alpha > -0.5 && spec.alpha < 0.5))
    throw RegimeError("asymptotic_increment: requires |alpha| < 1/2");
  if (spec.kind == ProcessKind::PowerWeightedFull && spec.alpha == 0.0)
    throw RegimeError(
        "asymptotic_increment: alpha = 0 is excluded for the two-sided kind");
  if (!(s > 0.0)) throw RegimeError("asymptotic_increment: anchor s must be > 0");
  if (!(h > 0.0)) throw ValidationError("asymptotic_increment: h must be > 0");
  AsymptoticPrediction p;
  p.constant = mandelbrot_constant(spec.alpha);
  p.power = 2.0 * spec.alpha + 1.0;
  p.anchor_factor = std::pow(s, -spec.gamma);
  return p;
}

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::ExactQuasihelix: return "exact_quasihelix";
    case Regime::Generalized: return "generalized";
    case Regime::LogCorrected: return "log_corrected";
    case Regime::Uncovered: return "uncovered";
  }
  return "?";
}

}  // namespace volterra

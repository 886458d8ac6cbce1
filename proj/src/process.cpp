#include "volterra/process.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "volterra/errors.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

namespace {

void require(bool ok, const char* constraint) {
  if (!ok) throw ValidationError(std::string("make_process: ") + constraint);
}

void require_unused(double value, const char* kind, const char* name) {
  if (value != 0.0) {
    std::ostringstream msg;
    msg << "make_process: " << kind << " does not take " << name;
    throw ValidationError(msg.str());
  }
}

// Inner compensating integral of the second-kind tempered kernel:
// lambda * int_0^t e^{-lambda (v-u)_+} (v-u)_+^alpha dv, evaluated in the
// shifted variable x = v - u. Tolerance is fixed at 1e-12 because the
// result sits inside squared integrands.
double tempered2_inner(double lambda, double alpha, double t, double u) {
  const double lo = std::max(0.0, -u);
  const double hi = t - u;
  auto f = [lambda, alpha](double x, double) {
    return std::exp(-lambda * x) * std::pow(x, alpha);
  };
  const EndpointSingularity sing =
      (lo == 0.0 && alpha < 0.0) ? EndpointSingularity::lower(alpha)
                                 : EndpointSingularity::none();
  return lambda * integrate_finite(SingularIntegrand(f), lo, hi, sing, 1e-12).value;
}

}  // namespace

Interval::Interval(double t1_, double t2_) : t1(t1_), t2(t2_) {
  if (!(t1 >= 0.0) || !(t1 < t2) || !std::isfinite(t2))
    throw ValidationError("Interval: need 0 <= t1 < t2, finite");
}

double truncated_pow(double x, double a) {
  if (x > 0.0) return std::pow(x, a);
  if (x < 0.0) return 0.0;
  if (a < 0.0)
    throw ValidationError(
        "truncated power (x)_+^a has no pointwise value at x = 0 for a < 0");
  return 0.0;
}

ProcessSpec make_process(ProcessKind kind, double alpha, double gamma,
                         double lambda) {
  if (!std::isfinite(alpha) || !std::isfinite(gamma) || !std::isfinite(lambda))
    throw ValidationError("make_process: parameters must be finite");
  switch (kind) {
    case ProcessKind::ExpTempered:
    case ProcessKind::TemperedFbm:
    case ProcessKind::TemperedFbmII:
      require(lambda > 0.0, "lambda must be > 0");
      require(alpha > -0.5, "alpha must be > -1/2");
      require_unused(gamma, to_string(kind), "gamma");
      return {kind, alpha, 0.0, lambda};
    case ProcessKind::PowerWeighted:
    case ProcessKind::PowerWeightedFull:
      require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
      require(alpha > -0.5, "alpha must be > -1/2");
      require_unused(lambda, to_string(kind), "lambda");
      return {kind, alpha, gamma, 0.0};
    case ProcessKind::HadamardLog:
      require(alpha > 0.0, "alpha must be > 0");
      require_unused(gamma, "u3", "gamma");
      require_unused(lambda, "u3", "lambda");
      return {kind, alpha, 0.0, 0.0};
    case ProcessKind::PastComponent:
      require(gamma >= 0.0 && gamma < 1.0, "gamma must lie in [0, 1)");
      require(alpha > -0.5, "alpha must be > -1/2");
      require(alpha < 0.5 + 0.5 * gamma, "alpha must be < 1/2 + gamma/2");
      require(alpha != 0.0, "alpha must be nonzero");
      require_unused(lambda, "v", "lambda");
      return {kind, alpha, gamma, 0.0};
    case ProcessKind::Wiener:
      require_unused(alpha, "wiener", "alpha");
      require_unused(gamma, "wiener", "gamma");
      require_unused(lambda, "wiener", "lambda");
      return {kind, 0.0, 0.0, 0.0};
  }
  throw ValidationError("make_process: unknown kind");
}

double kernel_eval(const ProcessSpec& spec, double t, double u) {
  if (!(t > 0.0)) throw ValidationError("kernel_eval: t must be > 0");
  const double a = spec.alpha;
  const double g = spec.gamma;
  const double l = spec.lambda;
  switch (spec.kind) {
    case ProcessKind::Wiener:
      if (!(u > 0.0 && u < t))
        throw ValidationError("kernel_eval: wiener needs 0 < u < t");
      return 1.0;
    case ProcessKind::ExpTempered:
      if (!(u > 0.0 && u < t))
        throw ValidationError("kernel_eval: u1 needs 0 < u < t");
      return std::exp(-l * u) * std::pow(t - u, a);
    case ProcessKind::PowerWeighted:
      if (!(u > 0.0 && u < t))
        throw ValidationError("kernel_eval: u2 needs 0 < u < t");
      return std::pow(u, -0.5 * g) * std::pow(t - u, a);
    case ProcessKind::HadamardLog:
      if (!(u > 0.0 && u < t))
        throw ValidationError("kernel_eval: u3 needs 0 < u < t");
      return std::pow(std::log(t / u), 0.5 * (a - 1.0));
    case ProcessKind::TemperedFbm: {
      if (!(u < t)) throw ValidationError("kernel_eval: u4 needs u < t");
      const double lead = std::exp(-l * (t - u)) * std::pow(t - u, a);
      if (u > 0.0) return lead;
      return lead - std::exp(-l * (-u)) * truncated_pow(-u, a);
    }
    case ProcessKind::TemperedFbmII: {
      if (!(u < t)) throw ValidationError("kernel_eval: u5 needs u < t");
      const double lead = std::exp(-l * (t - u)) * std::pow(t - u, a);
      const double past =
          u > 0.0 ? 0.0 : std::exp(-l * (-u)) * truncated_pow(-u, a);
      return lead - past + tempered2_inner(l, a, t, u);
    }
    case ProcessKind::PowerWeightedFull: {
      if (!(u < t)) throw ValidationError("kernel_eval: u6 needs u < t");
      if (u == 0.0) {
        if (g > 0.0)
          throw ValidationError(
              "kernel_eval: u6 kernel is singular at u = 0 for gamma > 0");
        return std::pow(t, a) - truncated_pow(0.0, a);
      }
      return std::pow(std::abs(u), -0.5 * g) *
             (std::pow(t - u, a) - truncated_pow(-u, a));
    }
    case ProcessKind::PastComponent: {
      if (!(u < 0.0)) throw ValidationError("kernel_eval: v needs u < 0");
      // (t+x)^a - x^a with x = -u, written without cancellation
      const double x = -u;
      const double diff = std::pow(x, a) * std::expm1(a * std::log1p(t / x));
      return std::pow(x, -0.5 * g) * diff;
    }
  }
  throw ValidationError("kernel_eval: unknown kind");
}

const char* to_string(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::ExpTempered: return "u1";
    case ProcessKind::PowerWeighted: return "u2";
    case ProcessKind::HadamardLog: return "u3";
    case ProcessKind::TemperedFbm: return "u4";
    case ProcessKind::TemperedFbmII: return "u5";
    case ProcessKind::PowerWeightedFull: return "u6";
    case ProcessKind::PastComponent: return "v";
    case ProcessKind::Wiener: return "wiener";
  }
  return "?";
}

ProcessKind kind_from_string(const std::string& name) {
  std::string s;
  s.reserve(name.size());
  for (char c : name) s.push_back(static_cast<char>(std::tolower(c)));
  if (s == "u1") return ProcessKind::ExpTempered;
  if (s == "u2") return ProcessKind::PowerWeighted;
  if (s == "u3") return ProcessKind::HadamardLog;
  if (s == "u4") return ProcessKind::TemperedFbm;
  if (s == "u5") return ProcessKind::TemperedFbmII;
  if (s == "u6") return ProcessKind::PowerWeightedFull;
  if (s == "v") return ProcessKind::PastComponent;
  if (s == "wiener" || s == "w") return ProcessKind::Wiener;
  throw ValidationError("unknown process kind: " + name);
}

}  // namespace volterra

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "volterra/errors.hpp"

namespace volterra {

/// Value of a numerical integral with a certified absolute error estimate
/// and the number of integrand evaluations spent.
struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
};

/// A numerical routine exhausted its evaluation budget (or stalled at
/// roundoff) before reaching the requested accuracy. Carries the best
/// estimate obtained so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, QuadResult best)
      : std::runtime_error(what), best_estimate(best) {}
  QuadResult best_estimate;
};

enum class SingularEnd { None, Lower, Upper };

/// Integrable power behavior (distance to endpoint)^exponent at one end of
/// the integration interval. The exponent must lie in (-1, 0]; exponent 0
/// is allowed and merely tells the engine which endpoint is delicate.
struct EndpointSingularity {
  SingularEnd location = SingularEnd::None;
  double exponent = 0.0;

  static EndpointSingularity none() { return {}; }
  static EndpointSingularity lower(double p) { return {SingularEnd::Lower, p}; }
  static EndpointSingularity upper(double p) { return {SingularEnd::Upper, p}; }
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr std::int64_t kQuadEvalBudget = 1'000'000;

using Integrand = std::function<double(double)>;

/// Integrand that receives, besides the abscissa, the exact distance to the
/// declared singular endpoint (computed in the transformed variable, so it
/// never suffers cancellation). Integrands should evaluate their singular
/// factor from the distance argument. With no declared singularity the
/// second argument is the distance to the nearer endpoint.
using SingularIntegrand = std::function<double(double, double)>;

/// Adaptive bisection with 15-point Gauss-Legendre panels after a
/// singularity-removing power substitution at the declared endpoint.
/// Converges when the summed panel error estimate drops below
/// max(tol, tol * |value|).
QuadResult integrate_finite(const SingularIntegrand& f, double a, double b,
                            EndpointSingularity sing = {},
                            double tol = kDefaultQuadTol);
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            EndpointSingularity sing = {},
                            double tol = kDefaultQuadTol);

/// Integral over [a, inf) of a function bounded by C * u^tail_exponent for
/// large u, tail_exponent < -1. The truncation point is chosen so the
/// analytic tail bound stays below tol/2; the reported error estimate
/// includes the tail bound. An optional lower-endpoint singularity may be
/// declared.
QuadResult integrate_semi_infinite(const SingularIntegrand& f, double a,
                                   double tail_exponent,
                                   double tol = kDefaultQuadTol,
                                   EndpointSingularity sing = {});
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   double tail_exponent,
                                   double tol = kDefaultQuadTol,
                                   EndpointSingularity sing = {});

}  // namespace volterra

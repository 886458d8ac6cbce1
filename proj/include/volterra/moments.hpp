#pragma once

#include "volterra/process.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

/// Increment U(t) - U(s) of a validated process, 0 <= s <= t.
struct IncrementQuery {
  ProcessSpec spec;
  double s = 0.0;
  double t = 0.0;
};

enum class MomentMethod { ClosedForm, Quadrature, SumOfComponents };

/// E(U(t) - U(s))^2 decomposed into the integral over the shared past (j1),
/// the fresh-noise integral (j2) and, for the two-sided kernels, the
/// negative-time integral (j4). total is always the sum of the parts
/// present.
struct MomentBreakdown {
  double j1 = 0.0;
  double j2 = 0.0;
  double j4 = 0.0;
  double total = 0.0;
  MomentMethod method = MomentMethod::Quadrature;
  double error_estimate = 0.0;
};

/// E U(t)^2. Closed forms where available (power-weighted, Hadamard,
/// Wiener), quadrature otherwise.
double variance(const ProcessSpec& spec, double t,
                double tol = kDefaultQuadTol);

MomentBreakdown incremental_variance(const IncrementQuery& q,
                                     double tol = kDefaultQuadTol);

/// R(s, t) by polarization of variances and the incremental variance;
/// symmetric in (s, t) by construction.
double covariance(const ProcessSpec& spec, double s, double t,
                  double tol = kDefaultQuadTol);

/// g1(r) = int_0^r (r-z)^{-gamma} [(1+z)^alpha - z^alpha]^2 dz.
double g1(double r, double alpha, double gamma, double tol = kDefaultQuadTol);

/// g2(r) = int_0^1 (z+r)^{-gamma} (1-z)^{2 alpha} dz.
double g2(double r, double alpha, double gamma, double tol = kDefaultQuadTol);

/// Mandelbrot-Van Ness normalizing constant
/// C(alpha) = Gamma(alpha+1)^2 / (Gamma(2 alpha + 2) cos(pi alpha)),
/// |alpha| < 1/2.
double mandelbrot_constant(double alpha);

/// Same constant from its integral form
/// int_0^inf [(1+z)^alpha - z^alpha]^2 dz + 1/(2 alpha + 1).
double mandelbrot_constant_numeric(double alpha, double tol = kDefaultQuadTol);

namespace detail {
/// (h+z)^a - z^a for z > 0, stable against cancellation at large z.
double power_diff(double a, double h, double z);
/// e^{-l(h+v)}(h+v)^a - e^{-lv}v^a for v > 0, stable at large v.
double tempered_diff(double l, double a, double h, double v);
}  // namespace detail

}  // namespace volterra

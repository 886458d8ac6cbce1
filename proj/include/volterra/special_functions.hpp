#pragma once

namespace volterra {

/// log Gamma(x) for x > 0, Lanczos-type rational approximation
/// (14-term series, relative error ~1e-15 over the positive axis).
double log_gamma(double x);

/// Gamma(x) for x > 0. Relative error <= 1e-13 on [0.1, 50].
double gamma_fn(double x);

/// Gamma extended to negative non-integer arguments by the reflection
/// formula Gamma(x) Gamma(1-x) = pi / sin(pi x).
double gamma_extended(double x);

/// Euler beta B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), a, b > 0.
/// Symmetric in (a, b) by evaluation order.
double beta_fn(double a, double b);

}  // namespace volterra

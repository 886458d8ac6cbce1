#include "volterra/special_functions.hpp"

#include <cmath>
#include <limits>

#include "volterra/errors.hpp"

namespace volterra {

namespace {

constexpr double kLanczosCoef[14] = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw ValidationError("log_gamma: argument must be positive and finite");
  double y = x;
  double tmp = x + 5.24218750000000000;  // rational shift 671/128
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (int j = 0; j < 14; ++j) ser += kLanczosCoef[j] / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw ValidationError("gamma_fn: argument must be positive and finite");
  return std::exp(log_gamma(x));
}

double gamma_extended(double x) {
  if (x > 0.0) return gamma_fn(x);
  if (!std::isfinite(x) || x == std::floor(x))
    throw ValidationError("gamma_extended: pole at non-positive integer");
  return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ValidationError("beta_fn: both arguments must be positive");
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

}  // namespace volterra

#include "volterra/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "volterra/special_functions.hpp"

namespace volterra {

namespace detail {

double power_diff(double a, double h, double z) {
  if (h == 0.0 || a == 0.0) return 0.0;
  const double e = a * std::log1p(h / z);
  if (e > 700.0) return std::pow(h + z, a);  // z^a underflows relative to it
  return std::pow(z, a) * std::expm1(e);
}

double tempered_diff(double l, double a, double h, double v) {
  if (h == 0.0) return 0.0;
  const double e = -l * h + (a == 0.0 ? 0.0 : a * std::log1p(h / v));
  if (e > 700.0) return std::exp(-l * (h + v)) * std::pow(h + v, a);
  return std::exp(-l * v) * std::pow(v, a) * std::expm1(e);
}

}  // namespace detail

namespace {

using detail::power_diff;
using detail::tempered_diff;

double sq(double x) { return x * x; }

EndpointSingularity lower_power(double p) {
  return EndpointSingularity::lower(std::min(p, 0.0));
}

// --- power-weighted kernel (u^{-gamma/2} (t-u)^alpha), shifted variables ---

// J1 = int_0^s (s-z)^{-gamma} [(h+z)^alpha - z^alpha]^2 dz, split at s/2 so
// each piece carries one declared endpoint.
QuadResult j1_power_weighted(double a, double g, double s, double t,
                             double tol) {
  const double h = t - s;
  auto head = [a, g, s, h](double z, double) {
    return std::pow(s - z, -g) * sq(power_diff(a, h, z));
  };
  auto tail = [a, g, s, h](double, double d) {
    return std::pow(d, -g) * sq(power_diff(a, h, s - d));
  };
  const QuadResult qa = integrate_finite(SingularIntegrand(head), 0.0, 0.5 * s,
                                         lower_power(2.0 * a), 0.5 * tol);
  const QuadResult qb =
      integrate_finite(SingularIntegrand(tail), 0.5 * s, s,
                       EndpointSingularity::upper(-g), 0.5 * tol);
  return {qa.value + qb.value, qa.error_estimate + qb.error_estimate,
          qa.evaluations + qb.evaluations};
}

// J2 = int_s^t u^{-gamma} (t-u)^{2 alpha} du, written in v = t - u.
QuadResult j2_power_weighted(double a, double g, double s, double t,
                             double tol) {
  const double h = t - s;
  if (s > 0.0) {
    auto f = [a, g, t](double v, double) {
      return std::pow(t - v, -g) * std::pow(v, 2.0 * a);
    };
    return integrate_finite(SingularIntegrand(f), 0.0, h, lower_power(2.0 * a),
                            tol);
  }
  // s = 0: both endpoints are singular, split at h/2.
  auto head = [a, g, t](double v, double) {
    return std::pow(t - v, -g) * std::pow(v, 2.0 * a);
  };
  auto tail = [a, g, h](double, double d) {
    return std::pow(d, -g) * std::pow(h - d, 2.0 * a);
  };
  const QuadResult qa = integrate_finite(SingularIntegrand(head), 0.0, 0.5 * h,
                                         lower_power(2.0 * a), 0.5 * tol);
  const QuadResult qb =
      integrate_finite(SingularIntegrand(tail), 0.5 * h, h,
                       EndpointSingularity::upper(-g), 0.5 * tol);
  return {qa.value + qb.value, qa.error_estimate + qb.error_estimate,
          qa.evaluations + qb.evaluations};
}

// --- exponentially tempered zero-started kernel ---

QuadResult j1_exp_tempered(double a, double l, double s, double t,
                           double tol) {
  const double h = t - s;
  auto f = [a, l, s, h](double z, double) {
    return std::exp(-2.0 * l * (s - z)) * sq(power_diff(a, h, z));
  };
  return integrate_finite(SingularIntegrand(f), 0.0, s, lower_power(2.0 * a),
                          tol);
}

QuadResult j2_exp_tempered(double a, double l, double s, double t,
                           double tol) {
  const double h = t - s;
  auto f = [a, l, t](double v, double) {
    return std::exp(-2.0 * l * (t - v)) * std::pow(v, 2.0 * a);
  };
  return integrate_finite(SingularIntegrand(f), 0.0, h, lower_power(2.0 * a),
                          tol);
}

// --- Hadamard logarithmic kernel ---

// Kernel difference (log(t/u))^b - (log(s/u))^b with b = (alpha-1)/2,
// written through log1p so small log arguments keep full precision.
double hadamard_diff(double b, double ls, double dl) {
  if (b == 0.0) return 0.0;
  const double e = b * std::log1p(dl / ls);
  if (e > 700.0) return std::pow(ls + dl, b);
  return std::pow(ls, b) * std::expm1(e);
}

QuadResult j1_hadamard(double a, double s, double t, double tol) {
  const double b = 0.5 * (a - 1.0);
  const double dl = std::log1p((t - s) / s);  // log(t/s)
  auto head = [b, s, dl](double u, double) {
    return sq(hadamard_diff(b, std::log(s / u), dl));
  };
  auto tail = [b, s, dl](double, double d) {
    return sq(hadamard_diff(b, -std::log1p(-d / s), dl));
  };
  const EndpointSingularity upper =
      EndpointSingularity::upper(std::min(a - 1.0, 0.0));
  const QuadResult qa =
      integrate_finite(SingularIntegrand(head), 0.0, 0.5 * s,
                       EndpointSingularity::none(), 0.5 * tol);
  const QuadResult qb =
      integrate_finite(SingularIntegrand(tail), 0.5 * s, s, upper, 0.5 * tol);
  return {qa.value + qb.value, qa.error_estimate + qb.error_estimate,
          qa.evaluations + qb.evaluations};
}

QuadResult j2_hadamard(double a, double s, double t, double tol) {
  auto f = [a, t](double, double d) {
    return std::pow(-std::log1p(-d / t), a - 1.0);
  };
  return integrate_finite(SingularIntegrand(f), s, t,
                          EndpointSingularity::upper(std::min(a - 1.0, 0.0)),
                          tol);
}

// --- two-sided tempered kernels (stationary increments) ---

double tempered2_tail_integral(double l, double a, double lo, double hi) {
  // int e^{-l x} x^a dx over [lo, hi]; fixed 1e-12 tolerance since the
  // value sits inside squared integrands.
  auto f = [l, a](double x, double) {
    return std::exp(-l * x) * std::pow(x, a);
  };
  const EndpointSingularity s = (lo == 0.0 && a < 0.0)
                                    ? EndpointSingularity::lower(a)
                                    : EndpointSingularity::none();
  return integrate_finite(SingularIntegrand(f), lo, hi, s, 1e-12).value;
}

struct TemperedJs {
  QuadResult j1, j2;
};

TemperedJs tempered_js(bool second_kind, double a, double l, double h,
                       double tol) {
  // Exponential-tail truncation instead of the algebraic rule:
  // e^{-2 lambda v} dominates every polynomial factor.
  const double cut =
      std::max({1.0, 4.0 * h, (2.0 / l) * std::log(1.0 / tol)});

  auto diff = [second_kind, a, l, h](double v) {
    double d = tempered_diff(l, a, h, v);
    if (second_kind) d += l * tempered2_tail_integral(l, a, v, v + h);
    return d;
  };
  auto f1 = [&diff](double v, double) { return sq(diff(v)); };
  QuadResult j1 = integrate_finite(SingularIntegrand(f1), 0.0, cut,
                                   lower_power(2.0 * a), tol);
  j1.error_estimate += sq(diff(cut)) / l;  // tail allowance
  j1.evaluations += 1;

  auto f2 = [second_kind, a, l](double v, double) {
    double k = std::exp(-l * v) * std::pow(v, a);
    if (second_kind) k += l * tempered2_tail_integral(l, a, 0.0, v);
    return k * k;
  };
  const QuadResult j2 = integrate_finite(SingularIntegrand(f2), 0.0, h,
                                         lower_power(2.0 * a), tol);
  return {j1, j2};
}

// --- negative-time power-weighted component ---

QuadResult j4_past(double a, double g, double s, double t, double tol) {
  if (!(a < 0.5 + 0.5 * g))
    throw ValidationError(
        "incremental variance of the past component diverges for "
        "alpha >= 1/2 + gamma/2");
  double p = -g;
  if (s == 0.0 && a < 0.0) {
    p = 2.0 * a - g;
    if (!(p > -1.0))
      throw ValidationError(
          "variance of the past component diverges at s = 0 for "
          "alpha <= gamma/2 - 1/2");
  }
  const double h = t - s;
  auto f = [a, g, s, h](double u, double) {
    return std::pow(u, -g) * sq(power_diff(a, h, s + u));
  };
  const EndpointSingularity sing =
      p < 0.0 ? EndpointSingularity::lower(p) : EndpointSingularity::none();
  return integrate_semi_infinite(SingularIntegrand(f), 0.0,
                                 2.0 * a - 2.0 - g, tol, sing);
}

// Runs one quadrature piece; a non-convergence is rethrown with the parts
// of the breakdown that already exist.
template <typename Fn>
auto run_piece(const char* label, const MomentBreakdown& partial, Fn&& fn)
    -> decltype(fn()) {
  try {
    return fn();
  } catch (const AccuracyError& e) {
    std::ostringstream msg;
    msg << "incremental_variance: " << label << " did not converge ("
        << e.what() << "); partial breakdown: j1 = " << partial.j1
        << ", j2 = " << partial.j2 << ", j4 = " << partial.j4;
    throw AccuracyError(msg.str(), e.best_estimate);
  }
}

}  // namespace

MomentBreakdown incremental_variance(const IncrementQuery& q, double tol) {
  if (!(q.s >= 0.0) || !(q.t >= q.s) || !std::isfinite(q.t))
    throw ValidationError("incremental_variance: need 0 <= s <= t, finite");
  if (!(tol > 0.0))
    throw ValidationError("incremental_variance: tol must be > 0");
  const double a = q.spec.alpha;
  const double g = q.spec.gamma;
  const double l = q.spec.lambda;
  const double s = q.s;
  const double t = q.t;

  MomentBreakdown out;
  if (t == s) {
    out.method = MomentMethod::ClosedForm;
    return out;  // analytic limit of a degenerate increment
  }

  auto take_j1 = [&out](const QuadResult& q1) {
    out.j1 = q1.value;
    out.error_estimate += q1.error_estimate;
  };
  auto take_j2 = [&out](const QuadResult& q2) {
    out.j2 = q2.value;
    out.error_estimate += q2.error_estimate;
  };

  switch (q.spec.kind) {
    case ProcessKind::Wiener:
      out.j2 = t - s;
      out.total = out.j2;
      out.method = MomentMethod::ClosedForm;
      return out;
    case ProcessKind::PowerWeighted: {
      if (s > 0.0)
        take_j1(run_piece("J1", out,
                          [&] { return j1_power_weighted(a, g, s, t, tol); }));
      take_j2(run_piece("J2", out,
                        [&] { return j2_power_weighted(a, g, s, t, tol); }));
      out.total = out.j1 + out.j2;
      return out;
    }
    case ProcessKind::ExpTempered: {
      if (s > 0.0)
        take_j1(run_piece("J1", out,
                          [&] { return j1_exp_tempered(a, l, s, t, tol); }));
      take_j2(run_piece("J2", out,
                        [&] { return j2_exp_tempered(a, l, s, t, tol); }));
      out.total = out.j1 + out.j2;
      return out;
    }
    case ProcessKind::HadamardLog: {
      if (s > 0.0)
        take_j1(
            run_piece("J1", out, [&] { return j1_hadamard(a, s, t, tol); }));
      take_j2(run_piece("J2", out, [&] { return j2_hadamard(a, s, t, tol); }));
      out.total = out.j1 + out.j2;
      return out;
    }
    case ProcessKind::TemperedFbm:
    case ProcessKind::TemperedFbmII: {
      const bool second = q.spec.kind == ProcessKind::TemperedFbmII;
      const TemperedJs js = run_piece(
          "J1+J2", out, [&] { return tempered_js(second, a, l, t - s, tol); });
      take_j1(js.j1);
      take_j2(js.j2);
      out.total = out.j1 + out.j2;
      return out;
    }
    case ProcessKind::PastComponent: {
      const QuadResult j4 =
          run_piece("J4", out, [&] { return j4_past(a, g, s, t, tol); });
      out.j4 = j4.value;
      out.total = out.j4;
      out.error_estimate = j4.error_estimate;
      return out;
    }
    case ProcessKind::PowerWeightedFull: {
      // independent components: past part plus the zero-started part
      if (a != 0.0) {
        const QuadResult j4 =
            run_piece("J4", out, [&] { return j4_past(a, g, s, t, tol); });
        out.j4 = j4.value;
        out.error_estimate += j4.error_estimate;
      }
      if (s > 0.0)
        take_j1(run_piece("J1", out,
                          [&] { return j1_power_weighted(a, g, s, t, tol); }));
      take_j2(run_piece("J2", out,
                        [&] { return j2_power_weighted(a, g, s, t, tol); }));
      out.total = out.j4 + out.j1 + out.j2;
      out.method = MomentMethod::SumOfComponents;
      return out;
    }
  }
  throw ValidationError("incremental_variance: unknown kind");
}

double variance(const ProcessSpec& spec, double t, double tol) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw ValidationError("variance: t must be positive and finite");
  const double a = spec.alpha;
  const double g = spec.gamma;
  const double l = spec.lambda;
  switch (spec.kind) {
    case ProcessKind::Wiener:
      return t;
    case ProcessKind::PowerWeighted:
      return beta_fn(1.0 - g, 1.0 + 2.0 * a) *
             std::pow(t, 2.0 * a + 1.0 - g);
    case ProcessKind::HadamardLog:
      return gamma_fn(a) * t;
    case ProcessKind::ExpTempered: {
      auto f = [a, l](double u, double) {
        return std::exp(2.0 * l * u) * std::pow(u, 2.0 * a);
      };
      const QuadResult q = integrate_finite(SingularIntegrand(f), 0.0, t,
                                            lower_power(2.0 * a), tol);
      return std::exp(-2.0 * l * t) * q.value;
    }
    default:
      return incremental_variance({spec, 0.0, t}, tol).total;
  }
}

double covariance(const ProcessSpec& spec, double s, double t, double tol) {
  if (!(s > 0.0) || !(t > 0.0))
    throw ValidationError("covariance: s and t must be positive");
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  const double inc = incremental_variance({spec, lo, hi}, tol).total;
  return 0.5 * (variance(spec, lo, tol) + variance(spec, hi, tol) - inc);
}

double g1(double r, double alpha, double gamma, double tol) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw ValidationError("g1: gamma must lie in [0, 1)");
  if (!(alpha > -0.5)) throw ValidationError("g1: alpha must be > -1/2");
  if (!(r > 0.0)) throw ValidationError("g1: r must be > 0");
  auto head = [alpha, gamma, r](double z, double) {
    return std::pow(r - z, -gamma) * sq(power_diff(alpha, 1.0, z));
  };
  auto tail = [alpha, gamma, r](double, double d) {
    return std::pow(d, -gamma) * sq(power_diff(alpha, 1.0, r - d));
  };
  const QuadResult qa =
      integrate_finite(SingularIntegrand(head), 0.0, 0.5 * r,
                       lower_power(2.0 * alpha), 0.5 * tol);
  const QuadResult qb =
      integrate_finite(SingularIntegrand(tail), 0.5 * r, r,
                       EndpointSingularity::upper(-gamma), 0.5 * tol);
  return qa.value + qb.value;
}

double g2(double r, double alpha, double gamma, double tol) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw ValidationError("g2: gamma must lie in [0, 1)");
  if (!(alpha > -0.5)) throw ValidationError("g2: alpha must be > -1/2");
  if (!(r >= 0.0)) throw ValidationError("g2: r must be >= 0");
  // v = 1 - z: int_0^1 (1 + r - v)^{-gamma} v^{2 alpha} dv; the weight gets
  // sharp (or singular, at r = 0) near v = 1, so split at 1/2.
  auto head = [alpha, gamma, r](double v, double) {
    return std::pow(1.0 + r - v, -gamma) * std::pow(v, 2.0 * alpha);
  };
  auto tail = [alpha, gamma, r](double, double d) {
    return std::pow(d + r, -gamma) * std::pow(1.0 - d, 2.0 * alpha);
  };
  const QuadResult qa =
      integrate_finite(SingularIntegrand(head), 0.0, 0.5,
                       lower_power(2.0 * alpha), 0.5 * tol);
  const QuadResult qb =
      integrate_finite(SingularIntegrand(tail), 0.5, 1.0,
                       EndpointSingularity::upper(-gamma), 0.5 * tol);
  return qa.value + qb.value;
}

double mandelbrot_constant(double alpha) {
  if (!(alpha > -0.5 && alpha < 0.5))
    throw ValidationError("mandelbrot_constant: need |alpha| < 1/2");
  return sq(gamma_fn(alpha + 1.0)) /
         (gamma_fn(2.0 * alpha + 2.0) * std::cos(M_PI * alpha));
}

double mandelbrot_constant_numeric(double alpha, double tol) {
  if (!(alpha > -0.5 && alpha < 0.5))
    throw ValidationError("mandelbrot_constant_numeric: need |alpha| < 1/2");
  auto f = [alpha](double z, double) {
    return sq(power_diff(alpha, 1.0, z));
  };
  const EndpointSingularity sing = alpha < 0.0
                                       ? EndpointSingularity::lower(2.0 * alpha)
                                       : EndpointSingularity::none();
  const QuadResult q = integrate_semi_infinite(SingularIntegrand(f), 0.0,
                                               2.0 * alpha - 2.0, tol, sing);
  return q.value + 1.0 / (2.0 * alpha + 1.0);
}

}  // namespace volterra

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volterra/errors.hpp"
#include "volterra/moments.hpp"
#include "volterra/rng.hpp"
#include "volterra/special_functions.hpp"

using namespace volterra;

namespace {

double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("variance closed forms") {
  const ProcessSpec u2 = make_process(ProcessKind::PowerWeighted, 0.25, 0.4);
  CHECK(variance(u2, 2.0) ==
        doctest::Approx(beta_fn(0.6, 1.5) * std::pow(2.0, 1.1))
            .epsilon(1e-13));
  CHECK(variance(u2, 2.0) == doctest::Approx(2.7033068436247678).epsilon(1e-12));

  const ProcessSpec u3 = make_process(ProcessKind::HadamardLog, 1.0);
  CHECK(variance(u3, 5.0) == doctest::Approx(5.0).epsilon(1e-13));

  const ProcessSpec w = make_process(ProcessKind::Wiener);
  CHECK(variance(w, 3.5) == 3.5);

  const ProcessSpec u1 = make_process(ProcessKind::ExpTempered, 0.0, 0.0, 1.0);
  CHECK(variance(u1, 1.0) ==
        doctest::Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-10));
  const ProcessSpec u1b =
      make_process(ProcessKind::ExpTempered, 0.3, 0.0, 1.0);
  CHECK(variance(u1b, 1.0) ==
        doctest::Approx(0.32677593237842563).epsilon(1e-10));
}

TEST_CASE("incremental variance: trivial and frozen values") {
  const ProcessSpec w = make_process(ProcessKind::Wiener);
  const MomentBreakdown wiener = incremental_variance({w, 1.0, 3.0});
  CHECK(wiener.total == 2.0);
  CHECK(wiener.method == MomentMethod::ClosedForm);

  // degenerate query
  const MomentBreakdown zero = incremental_variance({w, 1.0, 1.0});
  CHECK(zero.total == 0.0);
  CHECK(zero.method == MomentMethod::ClosedForm);

  // frozen from an independent high-precision evaluation
  const ProcessSpec u3 = make_process(ProcessKind::HadamardLog, 0.5);
  const MomentBreakdown b3 = incremental_variance({u3, 1.0, 1.1});
  CHECK(b3.j1 == doctest::Approx(0.11943935448567457).epsilon(1e-9));
  CHECK(b3.j2 == doctest::Approx(0.65821690536343278).epsilon(1e-9));

  const ProcessSpec u4 = make_process(ProcessKind::TemperedFbm, 0.3, 0.0, 1.0);
  const MomentBreakdown b4 = incremental_variance({u4, 0.0, 0.5});
  CHECK(b4.j1 == doctest::Approx(0.022980079419383424).epsilon(1e-9));
  CHECK(b4.j2 == doctest::Approx(0.11525291093076184).epsilon(1e-9));

  const ProcessSpec u5 =
      make_process(ProcessKind::TemperedFbmII, 0.3, 0.0, 1.0);
  const MomentBreakdown b5 = incremental_variance({u5, 2.0, 2.5});
  CHECK(b5.j1 == doctest::Approx(0.026628762505859995).epsilon(1e-8));
  CHECK(b5.j2 == doctest::Approx(0.18061735621741774).epsilon(1e-8));
  CHECK(b5.total == doctest::Approx(0.20724611872327773).epsilon(1e-8));
}

TEST_CASE("logarithmic-kernel variance: quadrature route meets the closed form") {
  // increment from zero exercises the fresh-noise integral alone, whose
  // value must reproduce Gamma(alpha) t
  for (double a : {0.5, 1.5, 2.5}) {
    const ProcessSpec u3 = make_process(ProcessKind::HadamardLog, a);
    const double quad = incremental_variance({u3, 0.0, 2.0}, 1e-11).total;
    CHECK(rel(quad, variance(u3, 2.0)) <= 1e-9);
  }
  // high-alpha increment at an interior anchor, frozen independently
  const ProcessSpec u3 = make_process(ProcessKind::HadamardLog, 2.5);
  const MomentBreakdown b = incremental_variance({u3, 1.0, 1.1});
  CHECK(b.j1 == doctest::Approx(0.0072913820140691788).epsilon(1e-9));
  CHECK(b.j2 == doctest::Approx(0.0011529874924944018).epsilon(1e-9));
}

TEST_CASE("tempered increment: stationary form meets the direct kernel route") {
  const ProcessSpec u4 = make_process(ProcessKind::TemperedFbm, 0.3, 0.0, 1.0);
  const double s = 1.0, t = 1.5;
  const double stationary = incremental_variance({u4, s, t}).total;
  auto diff_sq = [&](double u) {
    const double d = kernel_eval(u4, t, u) - kernel_eval(u4, s, u);
    return d * d;
  };
  auto fresh_sq = [&](double u) {
    const double k = kernel_eval(u4, t, u);
    return k * k;
  };
  // exponential decay makes -40 a negligible truncation; grading stays at
  // 2 so mesh points keep a representable distance from the endpoints
  const double direct =
      test_oracles::graded_midpoint(diff_sq, -40.0, s, 400000, 1.0, 2.0) +
      test_oracles::graded_midpoint(fresh_sq, s, t, 100000, 1.0, 2.0);
  CHECK(stationary == doctest::Approx(0.13823299035014526).epsilon(1e-10));
  CHECK(std::abs(direct - stationary) <= 1e-6 * stationary);
}

TEST_CASE("power-weighted scaling identity at a fixed point") {
  const ProcessSpec u2 = make_process(ProcessKind::PowerWeighted, 0.25, 0.4);
  const MomentBreakdown b = incremental_variance({u2, 1.0, 1.5});
  const double h = 0.5, r = 2.0;
  const double scaled =
      std::pow(h, 1.1) * (g1(r, 0.25, 0.4) + g2(r, 0.25, 0.4));
  CHECK(rel(b.total, scaled) <= 1e-8);
  CHECK(b.total == doctest::Approx(0.27639360383338091).epsilon(1e-9));
  CHECK(b.total == doctest::Approx(b.j1 + b.j2).epsilon(1e-9));
}

TEST_CASE("two-sided power-weighted decomposition with frozen components") {
  const ProcessSpec u6 =
      make_process(ProcessKind::PowerWeightedFull, 0.25, 0.4);
  const MomentBreakdown b = incremental_variance({u6, 1.0, 1.5});
  CHECK(b.method == MomentMethod::SumOfComponents);
  CHECK(b.j4 == doctest::Approx(0.023139223487629300).epsilon(1e-9));
  CHECK(b.j1 == doctest::Approx(0.056548727505226299).epsilon(1e-9));
  CHECK(b.j2 == doctest::Approx(0.21984487632815461).epsilon(1e-9));
  CHECK(b.total == b.j4 + b.j1 + b.j2);

  // graded-mesh oracle for the past component
  auto j4_integrand = [](double u) {
    const double d = std::pow(1.5 + u, 0.25) - std::pow(1.0 + u, 0.25);
    return std::pow(u, -0.4) * d * d;
  };
  const double oracle = test_oracles::graded_midpoint_semi_infinite(
      j4_integrand, 0.0, 400000, 5.0, 1e7);
  CHECK(b.j4 == doctest::Approx(oracle).epsilon(1e-5));
}

TEST_CASE("scaling identity on random draws") {
  NormalStream rng(42, 1);
  auto uniform = [&rng](double lo, double hi) {
    const double u = 1.0 / (1.0 + std::exp(-rng.next()));
    return lo + (hi - lo) * u;
  };
  for (int k = 0; k < 6; ++k) {
    const double a = uniform(-0.4, 1.2);
    const double g = uniform(0.0, 0.8);
    const double s = uniform(0.5, 2.0);
    const double h = uniform(0.25, 1.0);
    const ProcessSpec spec = make_process(ProcessKind::PowerWeighted, a, g);
    const double lhs = incremental_variance({spec, s, s + h}, 1e-12).total;
    const double rhs = std::pow(h, 2.0 * a + 1.0 - g) *
                       (g1(s / h, a, g, 1e-12) + g2(s / h, a, g, 1e-12));
    CHECK(rel(lhs, rhs) <= 1e-8);
  }
}

TEST_CASE("covariance by polarization") {
  const ProcessSpec w = make_process(ProcessKind::Wiener);
  CHECK(covariance(w, 1.0, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(covariance(w, 3.0, 1.0) == covariance(w, 1.0, 3.0));

  const ProcessSpec u2 = make_process(ProcessKind::PowerWeighted, 0.25, 0.0);
  CHECK(covariance(u2, 2.0, 2.0) ==
        doctest::Approx(variance(u2, 2.0)).epsilon(1e-12));

  // direct kernel-product quadrature oracle
  const ProcessSpec u1 = make_process(ProcessKind::ExpTempered, 0.3, 0.0, 1.0);
  const double direct = test_oracles::graded_midpoint(
      [](double u) {
        return std::exp(-2.0 * u) * std::pow(2.0 - u, 0.3) *
               std::pow(1.0 - u, 0.3);
      },
      0.0, 1.0, 200000, 2.0, 3.0);
  const double polarized = covariance(u1, 1.0, 2.0);
  CHECK(polarized == doctest::Approx(0.43359442265403222).epsilon(1e-10));
  CHECK(std::abs(polarized - direct) <= 1e-8);
}

TEST_CASE("covariance homogeneity of the power-weighted process") {
  const ProcessSpec u2 = make_process(ProcessKind::PowerWeighted, 0.3, 0.5);
  const double base = covariance(u2, 0.7, 1.3);
  const double power = 2.0 * 0.3 + 1.0 - 0.5;
  for (double c : {0.5, 2.0, 10.0}) {
    const double scaled = covariance(u2, c * 0.7, c * 1.3);
    CHECK(rel(scaled, std::pow(c, power) * base) <= 1e-8);
  }
}

TEST_CASE("stationary increments of the tempered pair") {
  for (ProcessKind kind :
       {ProcessKind::TemperedFbm, ProcessKind::TemperedFbmII}) {
    const ProcessSpec spec = make_process(kind, 0.3, 0.0, 1.0);
    const double ref = incremental_variance({spec, 0.0, 0.4}).total;
    for (double s : {0.5, 1.0, 5.0})
      CHECK(rel(incremental_variance({spec, s, s + 0.4}).total, ref) <= 1e-8);
  }
}

TEST_CASE("monotone variance on a grid") {
  const std::vector<ProcessSpec> specs = {
      make_process(ProcessKind::ExpTempered, 0.3, 0.0, 1.0),
      make_process(ProcessKind::PowerWeighted, -0.2, 0.3),
      make_process(ProcessKind::HadamardLog, 1.5),
      make_process(ProcessKind::Wiener),
  };
  for (const auto& spec : specs) {
    double prev = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const double v = variance(spec, t);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("g1 and g2 landmark values") {
  // alpha = 0 annihilates the integrand
  CHECK(g1(3.0, 0.0, 0.3) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g1(1.0, 0.25, 0.0) ==
        doctest::Approx(0.10425763252907871).epsilon(1e-10));
  CHECK(g2(0.0, 0.0, 0.4) == doctest::Approx(1.0 / 0.6).epsilon(1e-10));
  // g2(0) = B(1 - gamma, 2 alpha + 1)
  for (double a : {-0.2, 0.25, 0.8})
    for (double g : {0.0, 0.4, 0.7})
      CHECK(g2(0.0, a, g) ==
            doctest::Approx(beta_fn(1.0 - g, 2.0 * a + 1.0)).epsilon(1e-9));
}

TEST_CASE("g limits at large r") {
  const double r = 1e4;
  const double a = 0.25, g = 0.4;
  const double lim2 = 1.0 / (2.0 * a + 1.0);
  CHECK(std::abs(std::pow(r, g) * g2(r, a, g) - lim2) <= 1e-3 * lim2);
  const double lim1 = mandelbrot_constant(a) - lim2;
  CHECK(std::abs(std::pow(r, g) * g1(r, a, g) - lim1) <= 1e-2 * lim1);
}

TEST_CASE("Mandelbrot-Van Ness constant, both routes") {
  CHECK(mandelbrot_constant(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mandelbrot_constant_numeric(0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mandelbrot_constant(0.25) ==
        doctest::Approx(0.87401918476403994).epsilon(1e-12));
  for (double a : {0.25, -0.25, -0.4})
    CHECK(std::abs(mandelbrot_constant(a) -
                   mandelbrot_constant_numeric(a, 1e-10)) <= 1e-8);
  CHECK_THROWS_AS(mandelbrot_constant(0.5), ValidationError);
  CHECK_THROWS_AS(mandelbrot_constant_numeric(-0.5, 1e-10), ValidationError);
}

TEST_CASE("breakdown components stay consistent") {
  const ProcessSpec u1 = make_process(ProcessKind::ExpTempered, -0.3, 0.0, 2.0);
  const MomentBreakdown b = incremental_variance({u1, 0.7, 1.4});
  CHECK(rel(b.total, b.j1 + b.j2) <= 1e-9);
  CHECK(b.j1 >= 0.0);
  CHECK(b.j2 >= 0.0);
  CHECK(b.method == MomentMethod::Quadrature);
}

TEST_CASE("divergent moment queries are rejected") {
  // past component: marginal variance diverges for alpha <= gamma/2 - 1/2
  const ProcessSpec v = make_process(ProcessKind::PastComponent, -0.3, 0.5);
  CHECK_THROWS_AS(variance(v, 1.0), ValidationError);
  CHECK_NOTHROW(incremental_variance({v, 1.0, 1.5}));
  // two-sided kind: any increment diverges for alpha >= 1/2 + gamma/2
  const ProcessSpec u6 =
      make_process(ProcessKind::PowerWeightedFull, 0.8, 0.4);
  CHECK_THROWS_AS(incremental_variance({u6, 1.0, 1.5}), ValidationError);
}

TEST_CASE("moment argument validation") {
  const ProcessSpec w = make_process(ProcessKind::Wiener);
  CHECK_THROWS_AS(variance(w, 0.0), ValidationError);
  CHECK_THROWS_AS(variance(w, -1.0), ValidationError);
  CHECK_THROWS_AS(incremental_variance({w, -0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(incremental_variance({w, 2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(covariance(w, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(g1(0.0, 0.25, 0.4), ValidationError);
  CHECK_THROWS_AS(g2(-1.0, 0.25, 0.4), ValidationError);
  CHECK_THROWS_AS(g1(1.0, 0.25, 1.2), ValidationError);
}

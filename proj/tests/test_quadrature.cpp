#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "volterra/moments.hpp"
#include "volterra/quadrature.hpp"
#include "volterra/rng.hpp"

using namespace volterra;

TEST_CASE("endpoint power singularities") {
  // antiderivative -2 (1-z)^{1/2}
  const QuadResult upper = integrate_finite(
      Integrand([](double z) { return std::pow(1.0 - z, -0.5); }), 0.0, 1.0,
      EndpointSingularity::upper(-0.5), 1e-10);
  CHECK(upper.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(upper.evaluations >= 1);

  const QuadResult lower = integrate_finite(
      Integrand([](double z) { return std::pow(z, -0.4); }), 0.0, 1.0,
      EndpointSingularity::lower(-0.4), 1e-10);
  CHECK(lower.value == doctest::Approx(1.0 / 0.6).epsilon(1e-9));
}

TEST_CASE("g1-type integrand against the graded-mesh oracle") {
  // f(z) = (2-z)^{-0.3} [(1+z)^{0.25} - z^{0.25}]^2 over [0, 2]
  const double alpha = 0.25, gamma = 0.3, r = 2.0;
  auto f = [=](double z) {
    const double d = std::pow(1.0 + z, alpha) - std::pow(z, alpha);
    return std::pow(r - z, -gamma) * d * d;
  };
  // grading exponents stay moderate so the innermost mesh point keeps a
  // representable distance from the singular endpoint
  const double oracle =
      test_oracles::graded_midpoint(f, 0.0, r, 500000, 2.0, 2.5);
  // split so each call carries a single declared endpoint
  const QuadResult a = integrate_finite(Integrand(f), 0.0, 1.0,
                                        EndpointSingularity::none(), 1e-11);
  const QuadResult b = integrate_finite(Integrand(f), 1.0, r,
                                        EndpointSingularity::upper(-gamma),
                                        1e-11);
  const double value = a.value + b.value;
  // frozen from an independent high-precision evaluation
  CHECK(value == doctest::Approx(0.12129999933651215).epsilon(1e-10));
  CHECK(value == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("semi-infinite tails") {
  const QuadResult inv_sq = integrate_semi_infinite(
      Integrand([](double u) { return 1.0 / (u * u); }), 1.0, -2.0, 1e-10);
  CHECK(inv_sq.value == doctest::Approx(1.0).epsilon(1e-9));

  const QuadResult expo = integrate_semi_infinite(
      Integrand([](double u) { return std::exp(-u); }), 0.0, -2.0, 1e-10);
  CHECK(expo.value == doctest::Approx(1.0).epsilon(1e-9));

  // [(1+z)^a - z^a]^2 integrates to C(a) - 1/(2a+1); the difference is
  // evaluated through expm1 so the far tail is not rounding noise
  const double alpha = 0.25;
  const QuadResult mvn = integrate_semi_infinite(
      Integrand([alpha](double z) {
        const double d = volterra::detail::power_diff(alpha, 1.0, z);
        return d * d;
      }),
      0.0, 2.0 * alpha - 2.0, 1e-10);
  CHECK(mvn.value ==
        doctest::Approx(mandelbrot_constant(alpha) - 1.0 / 1.5).epsilon(1e-8));
  CHECK(mvn.value == doctest::Approx(0.20735251809737327).epsilon(1e-8));
}

TEST_CASE("tail exponent must be < -1") {
  CHECK_THROWS_AS(
      integrate_semi_infinite(Integrand([](double u) { return 1.0 / u; }), 1.0,
                              -1.0, 1e-10),
      ValidationError);
  CHECK_THROWS_AS(
      integrate_semi_infinite(Integrand([](double u) { return 1.0 / u; }), 1.0,
                              -0.5, 1e-10),
      ValidationError);
}

TEST_CASE("additivity across an interior split") {
  NormalStream rng(7, 0);
  for (int k = 0; k < 10; ++k) {
    const double c = 0.1 + 0.8 * (0.5 + 0.5 * std::tanh(rng.next()));
    auto f = [](double x) { return std::sin(3.0 * x) + x * x; };
    const double whole =
        integrate_finite(Integrand(f), 0.0, 1.0, {}, 1e-11).value;
    const double left =
        integrate_finite(Integrand(f), 0.0, c, {}, 1e-11).value;
    const double right =
        integrate_finite(Integrand(f), c, 1.0, {}, 1e-11).value;
    CHECK(whole == doctest::Approx(left + right).epsilon(1e-9));
  }
}

TEST_CASE("error estimate bounds the deviation from a tighter reference") {
  NormalStream rng(11, 0);
  for (int k = 0; k < 12; ++k) {
    const double p = -0.8 + 0.7 * (0.5 + 0.5 * std::tanh(rng.next()));
    const double freq = 1.0 + 5.0 * (0.5 + 0.5 * std::tanh(rng.next()));
    auto f = [p, freq](double x, double d) {
      return std::pow(d, p) * (1.0 + 0.5 * std::sin(freq * x));
    };
    const double tol = 1e-8;
    const QuadResult coarse = integrate_finite(
        SingularIntegrand(f), 0.0, 2.0, EndpointSingularity::lower(p), tol);
    const QuadResult ref =
        integrate_finite(SingularIntegrand(f), 0.0, 2.0,
                         EndpointSingularity::lower(p), tol / 100.0);
    CHECK(std::abs(coarse.value - ref.value) <=
          coarse.error_estimate + ref.error_estimate);
    // nonnegative integrand: value cannot undershoot -error
    CHECK(coarse.value >= -coarse.error_estimate);
  }
}

TEST_CASE("budget exhaustion raises an accuracy error with a best estimate") {
  auto nasty = [](double x) { return std::sin(1e7 * x); };
  try {
    integrate_finite(Integrand(nasty), 0.0, 1.0, {}, 1e-13);
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(e.best_estimate.evaluations > 0);
    CHECK(std::isfinite(e.best_estimate.value));
  }
}

TEST_CASE("argument validation") {
  auto f = Integrand([](double) { return 1.0; });
  CHECK_THROWS_AS(integrate_finite(f, 1.0, 0.0, {}, 1e-10), ValidationError);
  CHECK_THROWS_AS(integrate_finite(f, 0.0, 1.0, {}, -1.0), ValidationError);
  CHECK_THROWS_AS(
      integrate_finite(f, 0.0, 1.0, EndpointSingularity::lower(-1.5), 1e-10),
      ValidationError);
  CHECK_THROWS_AS(
      integrate_finite(f, 0.0, 1.0, EndpointSingularity::lower(0.5), 1e-10),
      ValidationError);
}

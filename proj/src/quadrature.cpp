#include "volterra/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace volterra {

namespace {

constexpr int kOrder = 15;

struct GaussRule {
  std::array<double, kOrder> node{};
  std::array<double, kOrder> weight{};
};

// Legendre nodes by Newton iteration on the recurrence, weights from the
// derivative. One-time cost, machine-precision accurate.
const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r;
    const int n = kOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 64; ++iter) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
        }
        dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double dx = p0 / dp;
        x -= dx;
        if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon()) break;
      }
      r.node[i] = -x;
      r.node[n - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.weight[i] = w;
      r.weight[n - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

using Mapped = std::function<double(double)>;

double panel_sum(const Mapped& g, double a, double b, std::int64_t& evals) {
  const GaussRule& r = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < kOrder; ++i) {
    const double x = mid + half * r.node[i];
    const double v = g(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrand returned a non-finite value near x = " << x;
      throw AccuracyError(msg.str(),
                          {std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity(), evals});
    }
    s += r.weight[i] * v;
  }
  evals += kOrder;
  return half * s;
}

struct Panel {
  double a = 0, b = 0;
  double left = 0, right = 0;  // single-panel sums of the two halves
  double value = 0;            // left + right
  double error = 0;            // |value - coarse single-panel sum|
};

Panel make_panel(const Mapped& g, double a, double b, double coarse,
                 std::int64_t& evals) {
  Panel p;
  p.a = a;
  p.b = b;
  const double m = 0.5 * (a + b);
  p.left = panel_sum(g, a, m, evals);
  p.right = panel_sum(g, m, b, evals);
  p.value = p.left + p.right;
  p.error = std::abs(p.value - coarse);
  return p;
}

struct PanelWorse {
  bool operator()(const Panel& x, const Panel& y) const {
    return x.error < y.error;
  }
};

QuadResult adaptive(const Mapped& g, const std::vector<double>& edges,
                    double tol, std::int64_t budget) {
  std::int64_t evals = 0;
  std::priority_queue<Panel, std::vector<Panel>, PanelWorse> active;
  double act_v = 0.0, act_e = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double coarse = panel_sum(g, edges[k], edges[k + 1], evals);
    const Panel p = make_panel(g, edges[k], edges[k + 1], coarse, evals);
    act_v += p.value;
    act_e += p.error;
    active.push(p);
  }
  double frozen_v = 0.0, frozen_e = 0.0;  // panels at the width limit
  while (true) {
    const double value = frozen_v + act_v;
    const double error = std::max(frozen_e + act_e, 0.0);
    const double target = std::max(tol, tol * std::abs(value));
    if (error <= target) return {value, error, evals};
    if (active.empty())
      throw AccuracyError("quadrature stalled at the panel width limit",
                          {value, error, evals});
    const Panel p = active.top();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {
      active.pop();
      act_v -= p.value;
      act_e -= p.error;
      frozen_v += p.value;
      frozen_e += p.error;
      continue;
    }
    if (evals + 4 * kOrder > budget)
      throw AccuracyError("quadrature evaluation budget exhausted",
                          {value, error, evals});
    active.pop();
    act_v -= p.value;
    act_e -= p.error;
    const Panel l = make_panel(g, p.a, m, p.left, evals);
    const Panel r = make_panel(g, m, p.b, p.right, evals);
    act_v += l.value + r.value;
    act_e += l.error + r.error;
    active.push(l);
    active.push(r);
  }
}

void validate_singularity(const EndpointSingularity& s) {
  if (s.location == SingularEnd::None) return;
  if (!(s.exponent > -1.0) || !(s.exponent <= 0.0))
    throw ValidationError(
        "EndpointSingularity: exponent must lie in (-1, 0]");
}

// Maps the integration variable so the declared power singularity becomes
// exactly flat: distance = w^m with m = 1/(1 + exponent). Gauss-Legendre
// nodes are interior, so f is never called at the singular point itself,
// and it always receives the exact distance computed in w.
QuadResult dispatch(const SingularIntegrand& f, double a, double b,
                    EndpointSingularity sing, double tol,
                    const std::vector<double>& interior = {}) {
  std::vector<double> edges;
  edges.push_back(a);
  for (double x : interior)
    if (x > edges.back() && x < b) edges.push_back(x);
  edges.push_back(b);
  switch (sing.location) {
    case SingularEnd::None: {
      auto g = [&f, a, b](double x) { return f(x, std::min(x - a, b - x)); };
      return adaptive(g, edges, tol, kQuadEvalBudget);
    }
    case SingularEnd::Lower: {
      const double m = 1.0 / (1.0 + sing.exponent);
      for (auto& x : edges) x = std::pow(x - a, 1.0 + sing.exponent);
      if (m == 1.0) {
        auto g = [&f, a](double w) { return f(a + w, w); };
        return adaptive(g, edges, tol, kQuadEvalBudget);
      }
      auto g = [&f, a, m](double w) {
        const double d = std::pow(w, m);
        return m * std::pow(w, m - 1.0) * f(a + d, d);
      };
      return adaptive(g, edges, tol, kQuadEvalBudget);
    }
    case SingularEnd::Upper: {
      const double m = 1.0 / (1.0 + sing.exponent);
      std::vector<double> wedges;
      wedges.reserve(edges.size());
      for (auto it = edges.rbegin(); it != edges.rend(); ++it)
        wedges.push_back(std::pow(b - *it, 1.0 + sing.exponent));
      if (m == 1.0) {
        auto g = [&f, b](double w) { return f(b - w, w); };
        return adaptive(g, wedges, tol, kQuadEvalBudget);
      }
      auto g = [&f, b, m](double w) {
        const double d = std::pow(w, m);
        return m * std::pow(w, m - 1.0) * f(b - d, d);
      };
      return adaptive(g, wedges, tol, kQuadEvalBudget);
    }
  }
  throw ValidationError("EndpointSingularity: unknown location");
}

}  // namespace

QuadResult integrate_finite(const SingularIntegrand& f, double a, double b,
                            EndpointSingularity sing, double tol) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw ValidationError("integrate_finite: need finite a < b");
  if (!(tol > 0.0)) throw ValidationError("integrate_finite: tol must be > 0");
  validate_singularity(sing);
  return dispatch(f, a, b, sing, tol);
}

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            EndpointSingularity sing, double tol) {
  return integrate_finite(
      SingularIntegrand([&f](double x, double) { return f(x); }), a, b, sing,
      tol);
}

QuadResult integrate_semi_infinite(const SingularIntegrand& f, double a,
                                   double tail_exponent, double tol,
                                   EndpointSingularity sing) {
  if (!std::isfinite(a))
    throw ValidationError("integrate_semi_infinite: lower limit not finite");
  if (!(tail_exponent < -1.0))
    throw ValidationError(
        "integrate_semi_infinite: tail exponent must be < -1 (divergent tail)");
  if (sing.location == SingularEnd::Upper)
    throw ValidationError(
        "integrate_semi_infinite: only a lower singularity can be declared");
  if (!(tol > 0.0))
    throw ValidationError("integrate_semi_infinite: tol must be > 0");
  validate_singularity(sing);

  // Estimate the tail constant C in |f(u)| <= C u^tail_exponent from probes
  // across several decades beyond the finite region.
  std::int64_t evals = 0;
  const double base = std::max(a, 0.0) + 1.0;
  double c_tail = 0.0;
  for (double u : {base, 10.0 * base, 100.0 * base, 1000.0 * base}) {
    c_tail = std::max(c_tail,
                      std::abs(f(u, u - a)) * std::pow(u, -tail_exponent));
    ++evals;
  }
  const double q = -(tail_exponent + 1.0);  // > 0
  double cut = 1000.0 * base;
  if (c_tail > 0.0) cut = std::pow(2.0 * c_tail / (tol * q), 1.0 / q);
  cut = std::clamp(cut, 2.0 * base, 1e306);
  // One refinement pass in case the probes understated the constant.
  {
    const double u = std::min(cut, 1e300);
    const double c2 = std::abs(f(u, u - a)) * std::pow(u, -tail_exponent);
    ++evals;
    if (c2 > c_tail) {
      c_tail = 2.0 * c2;
      cut = std::clamp(std::pow(2.0 * c_tail / (tol * q), 1.0 / q), 2.0 * base,
                       1e306);
    }
  }
  const double tail_bound =
      c_tail > 0.0 ? c_tail * std::pow(cut, tail_exponent + 1.0) / q : 0.0;

  const double split = std::min(a + 1.0, 0.5 * (a + cut));
  const QuadResult head = integrate_finite(f, a, split, sing, 0.25 * tol);
  // Octave breakpoints seed the refinement so distant mass cannot hide
  // between the nodes of one gigantic panel.
  std::vector<double> interior;
  for (double x = std::max(split, 1.0) * 2.0; x < cut; x *= 2.0)
    interior.push_back(x);
  const QuadResult body = dispatch(f, split, cut, EndpointSingularity::none(),
                                   0.25 * tol, interior);
  return {head.value + body.value,
          head.error_estimate + body.error_estimate + tail_bound,
          head.evaluations + body.evaluations + evals};
}

QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   double tail_exponent, double tol,
                                   EndpointSingularity sing) {
  return integrate_semi_infinite(
      SingularIntegrand([&f](double x, double) { return f(x); }), a,
      tail_exponent, tol, sing);
}

}  // namespace volterra

#include "volterra/analyze.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "volterra/errors.hpp"
#include "volterra/moments.hpp"
#include "volterra/parallel.hpp"
#include "volterra/simulate.hpp"

namespace volterra {

IncrementTable scan_increments(const ProcessSpec& spec, double anchor,
                               std::size_t lag_count, double lag_ratio,
                               double h_max, ScanMethod method,
                               const McConfig& mc, double tol) {
  if (!(anchor >= 0.0) || !std::isfinite(anchor))
    throw ValidationError("scan_increments: anchor must be >= 0");
  if (lag_count < 4)
    throw ValidationError("scan_increments: need at least 4 lags");
  if (!(lag_ratio > 0.0 && lag_ratio < 1.0))
    throw ValidationError("scan_increments: lag_ratio must lie in (0, 1)");
  if (!(h_max > 0.0)) throw ValidationError("scan_increments: h_max must be > 0");

  IncrementTable table;
  table.spec = spec;
  table.anchor = anchor;
  table.method = method;
  table.lags.resize(lag_count);
  table.sigma.resize(lag_count);
  table.std_errors.assign(lag_count, 0.0);
  for (std::size_t k = 0; k < lag_count; ++k)
    table.lags[k] = h_max * std::pow(lag_ratio, static_cast<double>(k));

  if (method == ScanMethod::Quadrature) {
    parallel_for(lag_count, [&](std::size_t k) {
      const double total =
          incremental_variance({spec, anchor, anchor + table.lags[k]}, tol)
              .total;
      if (!(total > 0.0))
        throw DataError("scan_increments: non-positive incremental variance");
      table.sigma[k] = std::sqrt(total);
    });
    return table;
  }

  // Monte Carlo: one ensemble over anchor and all lag points.
  std::vector<double> points;
  if (anchor > 0.0) points.push_back(anchor);
  for (std::size_t k = lag_count; k-- > 0;)
    points.push_back(anchor + table.lags[k]);
  std::sort(points.begin(), points.end());
  const TimeGrid grid(points);
  const PathEnsemble ens = sample_paths(spec, grid, mc.n_paths, mc.seed, tol);
  const auto& t = grid.points();
  for (std::size_t k = 0; k < lag_count; ++k) {
    const double target = anchor + table.lags[k];
    const auto it = std::lower_bound(t.begin(), t.end(), target);
    const auto j = static_cast<std::size_t>(it - t.begin());
    const auto [est, se] =
        anchor > 0.0 ? empirical_incremental_variance(ens, 0, j)
                     : empirical_variance_at(ens, j);
    if (!(est > 0.0))
      throw DataError("scan_increments: non-positive empirical variance");
    table.sigma[k] = std::sqrt(est);
    table.std_errors[k] = se / (2.0 * table.sigma[k]);  // delta method
  }
  return table;
}

FitResult fit_exponent(const IncrementTable& table) {
  const auto n = static_cast<Eigen::Index>(table.lags.size());
  if (n < 4) throw ValidationError("fit_exponent: need at least 4 lags");
  Eigen::ArrayXd x(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = table.lags[static_cast<std::size_t>(i)];
    const double s = table.sigma[static_cast<std::size_t>(i)];
    if (!(s > 0.0)) throw DataError("fit_exponent: sigma must be positive");
    x(i) = std::log(h);
    y(i) = std::log(s);
  }
  const double xm = x.mean();
  const double ym = y.mean();
  const double sxx = (x - xm).square().sum();
  const double sxy = ((x - xm) * (y - ym)).sum();
  if (!(sxx > 0.0)) throw DataError("fit_exponent: degenerate lag ladder");
  FitResult fit;
  fit.rho_hat = sxy / sxx;
  fit.intercept = ym - fit.rho_hat * xm;
  const double ss_res = (y - fit.intercept - fit.rho_hat * x).square().sum();
  const double ss_tot = (y - ym).square().sum();
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0)
                               : 1.0;
  return fit;
}

BoundCheckResult bound_check(const IncrementTable& table,
                             const RegimeReport& report) {
  if (report.regime != Regime::ExactQuasihelix &&
      report.regime != Regime::Generalized)
    throw RegimeError(
        "bound_check: needs an exact or generalized regime report (use "
        "log_correction_check for the borderline)");
  if (table.lags.empty()) throw DataError("bound_check: empty table");
  const double rho_lo = *report.rho_lower;
  const double rho_up = *report.rho_upper;
  BoundCheckResult out;
  out.mesh_size = table.lags.size();
  out.c1_hat = std::numeric_limits<double>::infinity();
  out.c2_hat = 0.0;
  for (std::size_t k = 0; k < table.lags.size(); ++k) {
    const double h = table.lags[k];
    const double s = table.sigma[k];
    out.c1_hat = std::min(out.c1_hat, s / std::pow(h, rho_lo));
    out.c2_hat = std::max(out.c2_hat, s / std::pow(h, rho_up));
  }
  return out;
}

std::pair<double, double> log_correction_check(const IncrementTable& table) {
  const ProcessKind kind = table.spec.kind;
  const bool borderline_kind = kind == ProcessKind::ExpTempered ||
                               kind == ProcessKind::PowerWeighted ||
                               kind == ProcessKind::TemperedFbm ||
                               kind == ProcessKind::TemperedFbmII ||
                               kind == ProcessKind::PowerWeightedFull;
  if (!borderline_kind || table.spec.alpha != 0.5)
    throw RegimeError(
        "log_correction_check: table is not in the alpha = 1/2 borderline");
  if (table.lags.empty()) throw DataError("log_correction_check: empty table");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t k = 0; k < table.lags.size(); ++k) {
    const double h = table.lags[k];
    const double ratio = table.sigma[k] * table.sigma[k] /
                         (h * h * (1.0 + std::abs(std::log(h))));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

std::vector<double> asymptotic_ratio_check(const ProcessSpec& spec,
                                           double anchor,
                                           const IncrementTable& table) {
  std::vector<double> ratios;
  ratios.reserve(table.lags.size());
  for (std::size_t k = 0; k < table.lags.size(); ++k) {
    const AsymptoticPrediction p =
        asymptotic_increment(spec, anchor, table.lags[k]);
    ratios.push_back(table.sigma[k] * table.sigma[k] /
                     p.predicted_variance(table.lags[k]));
  }
  return ratios;
}

}  // namespace volterra

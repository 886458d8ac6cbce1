#include "volterra/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "volterra/errors.hpp"
#include "volterra/moments.hpp"
#include "volterra/parallel.hpp"
#include "volterra/rng.hpp"

namespace volterra {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw ValidationError("TimeGrid: no points");
  double prev = 0.0;  // implicit origin
  const double span = points_.back();
  for (double p : points_) {
    if (!std::isfinite(p) || !(p > 0.0))
      throw ValidationError("TimeGrid: points must be finite and > 0");
    if (!(p > prev))
      throw ValidationError("TimeGrid: points must be strictly increasing");
    prev = p;
  }
  prev = 0.0;
  for (double p : points_) {
    if (p - prev < 1e-10 * span)
      throw ValidationError(
          "TimeGrid: spacing below 1e-10 of the span is rejected");
    prev = p;
  }
}

Eigen::MatrixXd build_covariance_matrix(const ProcessSpec& spec,
                                        const TimeGrid& grid, double tol) {
  const auto& t = grid.points();
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd cov(n, n);
  std::vector<double> var(t.size());
  parallel_for(t.size(), [&](std::size_t i) {
    var[i] = variance(spec, t[i], tol);
  });
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) pairs.emplace_back(i, j);
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    try {
      const double inc = incremental_variance({spec, t[i], t[j]}, tol).total;
      cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          0.5 * (var[i] + var[j] - inc);
    } catch (const AccuracyError& e) {
      std::ostringstream msg;
      msg << "covariance entry (" << i << ", " << j << "): " << e.what();
      throw AccuracyError(msg.str(), e.best_estimate);
    }
  });
  for (Eigen::Index i = 0; i < n; ++i) {
    cov(i, i) = var[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < n; ++j) cov(j, i) = cov(i, j);
  }
  return cov;
}

CholeskyResult cholesky_factor(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1)
    throw ValidationError("cholesky_factor: need a square matrix");
  const double max_diag = matrix.diagonal().maxCoeff();
  if (!(max_diag > 0.0))
    throw ConditioningError("cholesky_factor: non-positive diagonal",
                            matrix.diagonal().minCoeff());
  const Eigen::MatrixXd identity =
      Eigen::MatrixXd::Identity(matrix.rows(), matrix.cols());
  double jitter = 0.0;
  while (true) {
    const Eigen::MatrixXd shifted = matrix + jitter * identity;
    const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
    if (llt.info() == Eigen::Success) {
      const Eigen::MatrixXd lower = llt.matrixL();
      const double rel_err = (lower * lower.transpose() - shifted).norm() /
                             shifted.norm();
      if (rel_err <= 1e-8) return {lower, jitter};
    }
    if (jitter == 0.0)
      jitter = 1e-12 * max_diag;
    else if (jitter < 1e-6 * max_diag * 0.999)
      jitter *= 10.0;
    else
      break;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      matrix, Eigen::EigenvaluesOnly);
  throw ConditioningError(
      "cholesky_factor: factorization failed after maximal jitter",
      eig.eigenvalues().minCoeff());
}

PathEnsemble sample_paths(const ProcessSpec& spec, const TimeGrid& grid,
                          std::size_t n_paths, std::uint64_t seed,
                          double tol) {
  if (n_paths < 1) throw ValidationError("sample_paths: n_paths must be >= 1");
  const Eigen::MatrixXd cov = build_covariance_matrix(spec, grid, tol);
  const CholeskyResult chol = cholesky_factor(cov);
  const auto n = static_cast<Eigen::Index>(grid.size());
  PathEnsemble ens{grid, n_paths, seed,
                   Eigen::MatrixXd(static_cast<Eigen::Index>(n_paths), n),
                   matrix_checksum(chol.factor), chol.jitter};
  const Eigen::MatrixXd& lower = chol.factor;
  parallel_for(n_paths, [&](std::size_t p) {
    NormalStream rng(seed, p);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = rng.next();
    ens.values.row(static_cast<Eigen::Index>(p)) = (lower * z).transpose();
  });
  return ens;
}

namespace {

std::pair<double, double> mean_and_se(const Eigen::ArrayXd& samples) {
  const auto n = static_cast<double>(samples.size());
  const double mean = samples.mean();
  if (samples.size() < 2) return {mean, 0.0};
  const double var = (samples - mean).square().sum() / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace

std::pair<double, double> empirical_incremental_variance(
    const PathEnsemble& ensemble, std::size_t i, std::size_t j) {
  if (i >= j || j >= ensemble.grid.size())
    throw ValidationError(
        "empirical_incremental_variance: need grid indices i < j");
  const Eigen::ArrayXd sq =
      (ensemble.values.col(static_cast<Eigen::Index>(j)) -
       ensemble.values.col(static_cast<Eigen::Index>(i)))
          .array()
          .square();
  return mean_and_se(sq);
}

std::pair<double, double> empirical_variance_at(const PathEnsemble& ensemble,
                                                std::size_t j) {
  if (j >= ensemble.grid.size())
    throw ValidationError("empirical_variance_at: index out of range");
  const Eigen::ArrayXd sq =
      ensemble.values.col(static_cast<Eigen::Index>(j)).array().square();
  return mean_and_se(sq);
}

std::uint64_t matrix_checksum(const Eigen::MatrixXd& m) {
  std::uint64_t hash = 14695981039346656037ull;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::uint64_t bits;
      const double v = m(i, j);
      std::memcpy(&bits, &v, sizeof(bits));
      for (int b = 0; b < 8; ++b) {
        hash ^= (bits >> (8 * b)) & 0xffu;
        hash *= 1099511628211ull;
      }
    }
  }
  return hash;
}

}  // namespace volterra

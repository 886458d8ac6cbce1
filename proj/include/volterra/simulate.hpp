#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "volterra/process.hpp"
#include "volterra/quadrature.hpp"

namespace volterra {

/// Strictly increasing positive time points. A leading implicit point at
/// t = 0 with U(0) = 0 is understood for every kind the sampler supports,
/// so a single explicit point is a valid grid. Grids with spacing below
/// 1e-10 of the span are rejected: their covariance matrices are singular
/// beyond jitter repair.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> points);
  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double span() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

struct CholeskyResult {
  Eigen::MatrixXd factor;  // lower triangular
  double jitter = 0.0;     // diagonal perturbation that was applied
};

/// Monte Carlo path ensemble; values(p, i) = value of path p at grid point i.
/// Bit-reproducible for identical (spec, grid, n_paths, seed) under any
/// thread schedule.
struct PathEnsemble {
  TimeGrid grid;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd values;
  std::uint64_t factor_checksum = 0;
  double jitter_applied = 0.0;
};

/// Entry (i, j) = covariance(spec, t_i, t_j); symmetric by construction
/// (entries computed for i <= j and mirrored). Assembly is parallel over
/// entries with schedule-independent results.
Eigen::MatrixXd build_covariance_matrix(const ProcessSpec& spec,
                                        const TimeGrid& grid,
                                        double tol = kDefaultQuadTol);

/// Cholesky factor with escalating diagonal jitter: 1e-12 * max diagonal,
/// stepping by x10 up to 1e-6 * max diagonal. Fails with a conditioning
/// error (reporting the smallest eigenvalue) beyond that.
CholeskyResult cholesky_factor(const Eigen::MatrixXd& matrix);

PathEnsemble sample_paths(const ProcessSpec& spec, const TimeGrid& grid,
                          std::size_t n_paths, std::uint64_t seed,
                          double tol = kDefaultQuadTol);

/// Mean over paths of (U(t_j) - U(t_i))^2 and its standard error.
std::pair<double, double> empirical_incremental_variance(
    const PathEnsemble& ensemble, std::size_t i, std::size_t j);

/// Mean over paths of U(t_j)^2 and its standard error (increment from the
/// implicit origin).
std::pair<double, double> empirical_variance_at(const PathEnsemble& ensemble,
                                                std::size_t j);

/// FNV-1a over the raw bytes of a matrix, used for factor checksums.
std::uint64_t matrix_checksum(const Eigen::MatrixXd& m);

}  // namespace volterra

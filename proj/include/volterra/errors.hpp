#pragma once

#include <stdexcept>
#include <string>

namespace volterra {

/// Parameter or argument outside the documented domain.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was requested outside the regime it is defined for
/// (e.g. a log-correction check on a non-borderline parameter set).
class RegimeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Degenerate input data (zero sigmas, empty tables).
class DataError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Covariance factorization failed beyond jitter repair.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double smallest_eig)
      : std::runtime_error(what), smallest_eigenvalue(smallest_eig) {}
  double smallest_eigenvalue;
};

}  // namespace volterra

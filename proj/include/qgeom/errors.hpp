#pragma once

#include <stdexcept>
#include <string>

namespace qgeom {

/// Input rejected at an API boundary (wrong parameter count, bad label, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed form or chart was evaluated at one of its singular points
/// (C = 1 for the curvature, C >= 1 for the base-manifold chart).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Metric too close to singular for the tensor-calculus engine.
class ConditioningError : public std::runtime_error {
 public:
  ConditioningError(const std::string& what, double singular_value)
      : std::runtime_error(what), singular_value_(singular_value) {}
  double singular_value() const noexcept { return singular_value_; }

 private:
  double singular_value_;
};

/// Every eigenvalue of a metric fell below the inversion threshold.
class DegenerateMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Intermediate quantities violated an identity they must satisfy
/// (e.g. |z|^2 + |w|^2 > 1 in the fiber extraction).
class NumericalInconsistency : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qgeom

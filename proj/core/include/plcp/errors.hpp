#pragma once

#include <stdexcept>
#include <string>

namespace plcp {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Closed-form evaluation requested for a model the formulas do not cover
/// (the analytics are isotropic only).
class UnsupportedAnalytics : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An infinite integral could not be truncated within the requested tail mass.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double achieved_bound)
      : std::runtime_error(what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const { return achieved_bound_; }

 private:
  double achieved_bound_;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input the tessellation cannot handle (coincident generators).
class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The simulation window is too small to certify the requested geometry.
class InsufficientWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plcp

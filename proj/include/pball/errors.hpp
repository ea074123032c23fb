#pragma once

#include <stdexcept>
#include <string>

namespace pball {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma evaluated at a nonpositive integer.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Result exceeds the representable range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Series failed its stopping test within the iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Closed form requested for parameters where the underlying series diverges.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Structurally invalid parameter (wrong sign, wrong count, inconsistent pair).
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Integrand returned NaN or infinity at an evaluation point.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its subdivision budget.  Carries the best
// estimate reached and the error bound actually achieved.
class ToleranceError : public Error {
 public:
  ToleranceError(const std::string& what, double best_estimate, double achieved_error)
      : Error(what), best_estimate(best_estimate), achieved_error(achieved_error) {}

  double best_estimate;
  double achieved_error;
};

// A verified inequality failed beyond the allowed statistical margin.
class ViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace pball

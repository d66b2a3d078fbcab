#pragma once

#include <stdexcept>
#include <string>

namespace lrsta {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid caller-supplied argument (bad range, unnormalized state, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Time or parameter outside the domain of a schedule or trajectory.
class DomainError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A closed-form expression hit a pole.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics (bisection, quadrature) ran out of budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A calibration equation has no root in the searched range.
class CalibrationError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// Inverse engineering produced an envelope with a non-removable pole.
class SynthesisError : public Error {
 public:
  SynthesisError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// The Hamiltonian became non-finite during time stepping.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrsta

#pragma once

#include <stdexcept>
#include <string>

namespace asymp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two trigonometric polynomials with different base frequencies were combined.
class FrequencyMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was asked for an input class it does not support.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// Unknown problem name, missing parameter or violated problem invariant.
class InvalidProblem : public Error {
 public:
  using Error::Error;
};

/// The selected method cannot be applied to the given problem.
class UnsupportedMethod : public Error {
 public:
  using Error::Error;
};

/// A small divisor (resonant denominator) appeared.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// Formula evaluated at a parameter where it is singular.
class SingularParameter : public Error {
 public:
  using Error::Error;
};

/// Quadrature or other numeric routine failed to reach its tolerance.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Grid points outside the domain on which a problem is posed.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double last_time)
      : Error(what), last_time_(last_time) {}

  /// Last time reached with an accepted step.
  double last_time() const noexcept { return last_time_; }

 private:
  double last_time_;
};

class NoCycle : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class TurningPoint : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace asymp

#pragma once

#include <stdexcept>
#include <string>

namespace stcut {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

/// Raised when the discrete interface violates a geometric precondition
/// (open polyline, interface leaving the domain, empty active set).
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class AssemblyError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual = -1.0)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SingularMatrix : public SolverError {
 public:
  SingularMatrix(const std::string& what, long pivot)
      : SolverError(what), pivot_(pivot) {}
  /// Column of the first zero pivot, or -1 when unknown.
  long pivot() const { return pivot_; }

 private:
  long pivot_;
};

class NonConvergence : public SolverError {
 public:
  NonConvergence(const std::string& what, double last_update)
      : SolverError(what, last_update) {}
};

}  // namespace stcut

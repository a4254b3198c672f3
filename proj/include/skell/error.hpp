#pragma once

#include <stdexcept>
#include <string>

namespace skell {

// Exception hierarchy. The CLI maps each branch onto an exit code:
// InvalidArgument -> 1, NumericalFailure -> 2, IoFailure -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numerical_failure"; }
};

/// Adaptive quadrature did not reach its tolerance.
class QuadratureFailure : public NumericalFailure {
 public:
  QuadratureFailure(const std::string& what, double residual)
      : NumericalFailure(what + " (residual estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}
  const char* kind() const noexcept override { return "quadrature_failure"; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A requested moment of the radial or mixing law is infinite.
class MomentNotFinite : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
  const char* kind() const noexcept override { return "moment_not_finite"; }
};

/// Argument outside the representable range of double precision.
class RangeError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
  const char* kind() const noexcept override { return "range_error"; }
};

class IoFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "io_failure"; }
};

}  // namespace skell

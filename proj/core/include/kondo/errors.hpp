#pragma once

#include <stdexcept>
#include <string>

namespace kondo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A lookup (e.g. the impurity-coupling table) has no entry for the key.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// The problem is too large for the requested method.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Numerical failures: non-convergence, propagation, peak extraction.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : NumericalError(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class PropagationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoPeakError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OptimizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Two router pairs share a node.
class ExclusivityError : public Error {
 public:
  ExclusivityError(const std::string& what, std::string node)
      : Error(what), node_(std::move(node)) {}
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

}  // namespace kondo

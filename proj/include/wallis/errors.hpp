#pragma once

#include <stdexcept>
#include <string>

namespace wallis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument sits on a pole of the gamma function (0, -1, -2, ...).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation (non-finite,
/// non-positive where positivity is required, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Iterative refinement (quadrature, golden section, ...) did not reach the
/// requested accuracy within its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The number of terms needed exceeds the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace wallis

#pragma once

#include <stdexcept>
#include <string>

namespace tfbm {

/// Invalid parameters or arguments outside an operation's domain.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A series or iteration hit its cap before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure: indefinite covariance, failed factorization, etc.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Circulant embedding produced eigenvalues that are too negative.
class EmbeddingError : public NumericalError {
public:
  EmbeddingError(const std::string& what, double most_negative)
      : NumericalError(what), most_negative_(most_negative) {}

  double most_negative_eigenvalue() const noexcept { return most_negative_; }

private:
  double most_negative_;
};

}  // namespace tfbm

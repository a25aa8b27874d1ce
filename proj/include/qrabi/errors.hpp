#pragma once

#include <stdexcept>

namespace qrabi {

/// Argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Iterative method failed, or a truncation did not converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fock cutoff too small for the requested state or observable.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::overflow_error {
  using std::overflow_error::overflow_error;
};

}  // namespace qrabi

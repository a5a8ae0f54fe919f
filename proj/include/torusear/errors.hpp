#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace torusear {

/// A caller-supplied parameter violates an operation's precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A spectrum without a nonzero eigenvalue was asked for its connectivity.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Interval refinement hit the configured precision cap before separating.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Theta quotient does not exist: the numerator is not a product with the divisor.
class NotAProduct : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The spectrum is not the Laplacian spectrum of any discrete rectangular torus.
/// `partial()` holds the factors peeled before the failure, largest first.
class NotATorusSpectrum : public std::runtime_error {
 public:
  NotATorusSpectrum(const std::string& what, std::vector<int> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}

  const std::vector<int>& partial() const noexcept { return partial_; }

 private:
  std::vector<int> partial_;
};

/// The theta sampler does not behave like a finite exponential sum with
/// non-negative exponents.
class InvalidSampler : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric peeling could not certify the next (exponent, multiplicity) pair.
class RecoveryFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torusear

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "torusear/bigfloat.hpp"
#include "torusear/cyclo.hpp"
#include "torusear/spectra.hpp"

namespace torusear {

/// Theta(t) = sum_j c_j exp(-mu_j t) with exact exponents, strictly increasing.
///
/// Structurally the same data as a Spectrum; the separate type keeps the
/// exponential-sum operations apart from the eigenvalue ones.
class ThetaFunction {
 public:
  struct Term {
    CycloReal exponent;
    std::uint64_t mult;

    friend bool operator==(const Term&, const Term&) = default;
  };

  ThetaFunction() = default;
  explicit ThetaFunction(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }
  /// Theta(0) = sum of multiplicities.
  std::uint64_t value_at_zero() const;

  BigFloat evaluate(const BigFloat& t, mpfr_prec_t bits) const;

  friend bool operator==(const ThetaFunction&, const ThetaFunction&) = default;

 private:
  struct Sorted {};
  // Terms already strictly increasing with nonzero multiplicities.
  ThetaFunction(Sorted, std::vector<Term> terms) : terms_(std::move(terms)) {}
  friend ThetaFunction theta_from_spectrum(const Spectrum& s);
  friend ThetaFunction theta_divide(const ThetaFunction& numerator, const ThetaFunction& divisor);

  std::vector<Term> terms_;
};

ThetaFunction theta_from_spectrum(const Spectrum& s);
Spectrum spectrum_from_theta(const ThetaFunction& f);

/// Pairwise exponent sums with multiplied multiplicities.
ThetaFunction theta_product(const ThetaFunction& f, const ThetaFunction& g);

/// The q with theta_product(q, divisor) == numerator, by leading-term
/// elimination. The divisor must start with exponent 0. Throws NotAProduct
/// when no such q exists.
ThetaFunction theta_divide(const ThetaFunction& numerator, const ThetaFunction& divisor);

struct NumericThetaTerm {
  double exponent;
  std::uint64_t mult;

  friend bool operator==(const NumericThetaTerm&, const NumericThetaTerm&) = default;
};

/// Float-exponent variant of theta_divide. Exponents closer than
/// `cluster_tolerance` are merged before and matched during elimination.
std::vector<NumericThetaTerm> theta_divide_numeric(std::span<const NumericThetaTerm> numerator,
                                                   std::span<const NumericThetaTerm> divisor,
                                                   double cluster_tolerance = 1e-9);

/// Evaluates Theta(t) with a relative error around 2^-bits.
using ThetaSampler = std::function<BigFloat(const BigFloat& t, mpfr_prec_t bits)>;

ThetaSampler make_theta_sampler(const ThetaFunction& f);
/// Sampler of sum_j c_j exp(-mu_j t) for rational exponents.
ThetaSampler make_exponential_sum_sampler(std::vector<std::pair<Rational, std::uint64_t>> terms);

struct RecoveredTerm {
  double exponent;
  double error_bound;
  std::uint64_t mult;
};

struct RecoveryOptions {
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t max_bits = 1 << 16;
  /// Largest sample time tried when separating a term from the next one.
  double max_window = 8192.0;
};

/// Recovers (mu_j, c_j) from samples of an exact exponential sum with
/// non-negative exponents and positive integer coefficients, smallest
/// exponent first. Each step estimates the next exponent from log-ratios of
/// the residual, then refits all exponents found so far jointly by Newton's
/// method on samples far enough out that the unmodeled tail is negligible,
/// and rounds the new coefficient. Stops when the coefficients account for
/// Theta(0).
///
/// InvalidSampler: Theta(0) is not a positive integer or an exponent comes
/// out negative. RecoveryFailure: a coefficient rounds to zero or below, does
/// not settle near an integer, or more than `degree_bound` terms are needed.
std::vector<RecoveredTerm> spectrum_from_theta_samples(const ThetaSampler& sampler, int degree_bound,
                                                       const RecoveryOptions& options = {});

}  // namespace torusear

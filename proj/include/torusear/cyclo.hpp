#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "torusear/bigfloat.hpp"
#include "torusear/rational.hpp"

namespace torusear {

/// The N-th cyclotomic polynomial with exact integer coefficients, constant term first.
struct CyclotomicPolynomial {
  std::uint32_t order = 1;
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Exact Phi_N by recursive exact division of x^N - 1. Results are cached
/// process-wide behind a mutex; the returned reference stays valid.
const CyclotomicPolynomial& cyclotomic_poly(std::uint32_t n);

/// Euler's totient, the degree of Phi_N.
std::uint32_t euler_phi(std::uint32_t n);

/// Exact real element of a cyclotomic field Q(zeta_N).
///
/// The value is stored as sum of coeff * zeta_N^exponent over a fixed
/// Q-basis of Q(zeta_N) made of roots of unity: for every prime power
/// q = p^e exactly dividing N the q-component of the exponent must be a
/// Phi_q-reduced power, i.e. it lies below phi(q). This is the tensor
/// product of the prime-power power bases, so each value has exactly one
/// representation. The conductor is always the minimal one, which makes
/// equality a plain comparison of (conductor, terms).
///
/// Only real values are representable; constructors from raw sums check it.
class CycloReal {
 public:
  struct Term {
    std::uint32_t exponent;
    Rational coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  CycloReal();
  CycloReal(const Rational& q);  // NOLINT: rationals embed implicitly
  CycloReal(std::int64_t q) : CycloReal(Rational(q)) {}  // NOLINT

  /// Builds sum coeff * zeta_N^exponent; exponents are taken mod N.
  /// Throws InvalidParameter if the sum is not real.
  static CycloReal from_power_sum(std::uint32_t conductor,
                                  std::span<const std::pair<std::int64_t, Rational>> terms);

  /// Builds sum_k coeffs[k] * zeta_N^k (no length limit; reduced on entry).
  static CycloReal from_power_basis(std::uint32_t conductor, std::span<const Rational> coeffs);

  std::uint32_t conductor() const { return data_->conductor; }
  std::span<const Term> terms() const { return data_->terms; }
  bool is_zero() const { return data_->terms.empty(); }
  bool is_rational() const { return data_->conductor == 1; }

  /// Double approximation and a rigorous bound on its distance to the value.
  double approx() const { return data_->approx; }
  double approx_error() const { return data_->approx_error; }
  std::size_t hash() const { return data_->hash; }

  /// Coefficients of 1, zeta, ..., zeta^(phi(N)-1) after reducing modulo Phi_N.
  std::vector<Rational> power_basis_coeffs() const;

  /// "cyclo(N; c0, c1, ...)" with the Phi_N-reduced power-basis coefficients.
  std::string to_string() const;
  /// Parses the output of to_string(); also accepts a bare rational literal.
  static CycloReal parse(const std::string& text);

  friend CycloReal operator+(const CycloReal& a, const CycloReal& b);
  friend CycloReal operator-(const CycloReal& a, const CycloReal& b);
  friend CycloReal operator-(const CycloReal& a);
  friend CycloReal operator*(const CycloReal& a, const Rational& q);
  friend CycloReal operator*(const Rational& q, const CycloReal& a) { return a * q; }
  CycloReal& operator+=(const CycloReal& b) { return *this = *this + b; }

  friend bool operator==(const CycloReal& a, const CycloReal& b);

  /// Checks the representation invariants (basis membership, minimal
  /// conductor, conjugation invariance). Used by tests.
  bool check_invariants() const;

 private:
  struct Data {
    std::uint32_t conductor = 1;
    std::vector<Term> terms;
    double approx = 0.0;
    double approx_error = 0.0;
    std::size_t hash = 0;
  };

  explicit CycloReal(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static CycloReal make(std::uint32_t conductor, std::vector<Term> canonical_terms,
                        const double* approx, const double* approx_error);
  static CycloReal reduce(std::uint32_t conductor, std::vector<Term> raw);
  friend CycloReal combine(const CycloReal& a, const CycloReal& b, bool subtract);

  std::shared_ptr<const Data> data_;
};

/// 4 sin^2(pi j / m) = 2 - zeta_m^j - zeta_m^-j, exactly.
CycloReal eig_value(std::int64_t j, std::int64_t m);

inline CycloReal add(const CycloReal& a, const CycloReal& b) { return a + b; }
inline CycloReal sub(const CycloReal& a, const CycloReal& b) { return a - b; }
inline CycloReal scale(const CycloReal& a, const Rational& q) { return a * q; }
inline bool eq(const CycloReal& a, const CycloReal& b) { return a == b; }

/// Total order of the real values. Decided exactly: equality first, then
/// interval evaluation of the difference with doubling precision.
std::strong_ordering cmp(const CycloReal& a, const CycloReal& b);

inline bool operator<(const CycloReal& a, const CycloReal& b) { return cmp(a, b) < 0; }

struct FloatApprox {
  BigFloat value;
  BigFloat error_bound;
};

/// Approximation at `bits` of working precision with a rigorous error bound.
FloatApprox to_float(const CycloReal& a, unsigned bits);

/// Decimal rendering with `digits` significant digits.
std::string to_decimal(const CycloReal& a, int digits = 12);

/// Precision cap (bits) for cmp's interval refinement. Defaults to 4096.
void set_max_cmp_precision(unsigned bits);
unsigned max_cmp_precision();

struct CycloRealHash {
  std::size_t operator()(const CycloReal& a) const { return a.hash(); }
};

}  // namespace torusear

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "torusear/cyclo.hpp"
#include "torusear/graph.hpp"

namespace torusear {

class ThetaFunction;

/// Multiset of exact eigenvalues, sorted ascending by cmp, with distinct values.
class Spectrum {
 public:
  struct Entry {
    CycloReal value;
    std::uint64_t mult;

    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Spectrum() = default;

  /// Merges equal values and sorts. Zero multiplicities are dropped.
  static Spectrum from_entries(std::vector<Entry> entries);
  static Spectrum from_values(std::span<const CycloReal> values);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t distinct_count() const { return entries_.size(); }
  std::uint64_t total_count() const { return total_; }
  bool empty() const { return entries_.empty(); }

  friend bool operator==(const Spectrum& a, const Spectrum& b) {
    return a.total_ == b.total_ && a.entries_ == b.entries_;
  }

 private:
  friend Spectrum spectrum_from_theta(const ThetaFunction& f);

  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

/// {4 sin^2(pi j / m) : j = 0..m-1}.
Spectrum cycle_spectrum(int m);

/// Sumset with multiplied multiplicities: the spectrum of a Cartesian product.
Spectrum spectrum_sum(const Spectrum& s1, const Spectrum& s2);

/// Iterated spectrum_sum of cycle spectra.
Spectrum torus_spectrum(std::span<const int> dims);

/// {sum_i 4 sin^2(pi s_i j / n) : j = 0..n-1}.
Spectrum circulant_spectrum(int n, std::span<const int> jumps);

/// Smallest nonzero eigenvalue. Throws DegenerateSpectrum if there is none.
CycloReal algebraic_connectivity(const Spectrum& s);

/// chi(lambda) = det(L - lambda I), constant term first.
struct CharPoly {
  std::vector<BigInt> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// FNV-1a over the decimal coefficient strings.
  std::uint64_t hash() const;
  std::string hash_hex() const;

  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// Faddeev-LeVerrier over exact integers; every division is exact.
CharPoly char_poly(const IntegerMatrix& l);

/// Ascending eigenvalues of a symmetric integer matrix. Each eigenpair's
/// residual |Lv - lambda v| bounds the eigenvalue error and must stay below
/// tolerance * max(1, |L|_inf); PrecisionExhausted otherwise.
std::vector<double> numeric_spectrum(const IntegerMatrix& l, double tolerance = 1e-10);

bool isospectral(const Spectrum& a, const Spectrum& b);
/// Exact characteristic polynomial equality; different sizes give false.
bool isospectral(const IntegerMatrix& a, const IntegerMatrix& b);

}  // namespace torusear

#include "torusear/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "torusear/errors.hpp"

namespace torusear {

Spectrum Spectrum::from_entries(std::vector<Entry> entries) {
  std::unordered_map<CycloReal, std::uint64_t, CycloRealHash> merged;
  merged.reserve(entries.size());
  for (auto& e : entries)
    if (e.mult != 0) merged[e.value] += e.mult;
  Spectrum s;
  s.entries_.reserve(merged.size());
  for (auto& [value, mult] : merged) {
    s.entries_.push_back({value, mult});
    s.total_ += mult;
  }
  std::sort(s.entries_.begin(), s.entries_.end(),
            [](const Entry& a, const Entry& b) { return cmp(a.value, b.value) < 0; });
  return s;
}

Spectrum Spectrum::from_values(std::span<const CycloReal> values) {
  std::vector<Entry> entries;
  entries.reserve(values.size());
  for (const auto& v : values) entries.push_back({v, 1});
  return from_entries(std::move(entries));
}

Spectrum cycle_spectrum(int m) {
  if (m < 2) throw InvalidParameter("cycle_spectrum: m must be >= 2, got " + std::to_string(m));
  // 4 sin^2(pi j/m) = 4 sin^2(pi (m-j)/m): build each value once.
  std::vector<Spectrum::Entry> entries;
  for (int j = 0; 2 * j <= m; ++j) {
    const std::uint64_t mult = (j == 0 || 2 * j == m) ? 1 : 2;
    entries.push_back({eig_value(j, m), mult});
  }
  return Spectrum::from_entries(std::move(entries));
}

Spectrum spectrum_sum(const Spectrum& s1, const Spectrum& s2) {
  std::vector<Spectrum::Entry> entries;
  entries.reserve(s1.distinct_count() * s2.distinct_count());
  for (const auto& a : s1.entries())
    for (const auto& b : s2.entries()) entries.push_back({a.value + b.value, a.mult * b.mult});
  return Spectrum::from_entries(std::move(entries));
}

Spectrum torus_spectrum(std::span<const int> dims) {
  if (dims.empty()) throw InvalidParameter("torus_spectrum: empty shape");
  Spectrum s = cycle_spectrum(dims[0]);
  for (std::size_t i = 1; i < dims.size(); ++i) s = spectrum_sum(s, cycle_spectrum(dims[i]));
  return s;
}

Spectrum circulant_spectrum(int n, std::span<const int> jumps) {
  if (n < 3) throw InvalidParameter("circulant_spectrum: n must be >= 3");
  if (jumps.empty()) throw InvalidParameter("circulant_spectrum: at least one jump required");
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (jumps[i] <= 0 || 2 * jumps[i] >= n)
      throw InvalidParameter("circulant_spectrum: jump " + std::to_string(jumps[i]) + " outside (0, n/2)");
    if (i > 0 && jumps[i] <= jumps[i - 1])
      throw InvalidParameter("circulant_spectrum: jumps must be strictly increasing");
  }
  std::vector<CycloReal> values;
  values.reserve(n);
  for (int j = 0; j < n; ++j) {
    CycloReal v;
    for (int s : jumps) v += eig_value(static_cast<std::int64_t>(s) * j % n, n);
    values.push_back(std::move(v));
  }
  return Spectrum::from_values(values);
}

CycloReal algebraic_connectivity(const Spectrum& s) {
  for (const auto& e : s.entries())
    if (!e.value.is_zero()) return e.value;
  throw DegenerateSpectrum("algebraic_connectivity: spectrum has no nonzero eigenvalue");
}

std::uint64_t CharPoly::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : coeffs) {
    for (char ch : c.get_str()) {
      h ^= static_cast<unsigned char>(ch);
      h *= 0x100000001b3ULL;
    }
    h ^= static_cast<unsigned char>(',');
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string CharPoly::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
  return buf;
}

CharPoly char_poly(const IntegerMatrix& l) {
  const std::size_t n = l.dimension();
  // Sparse rows of L; Laplacians have few nonzeros per row.
  std::vector<std::vector<std::pair<std::size_t, BigInt>>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (l(i, j) != 0) rows[i].emplace_back(j, l(i, j));

  // det(lambda I - L) = sum_k c[k] lambda^k with c[n] = 1.
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  IntegerMatrix m(n);  // M_0 = 0
  IntegerMatrix lm(n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = L M_{k-1} + c_{n-k+1} I, reusing lm = L M_{k-1}.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = lm(i, j);
      m(i, i) += c[n - k + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt acc = 0;
        for (const auto& [t, v] : rows[i]) acc += v * m(t, j);
        lm(i, j) = acc;
      }
    BigInt tr = lm.trace();
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), tr.get_mpz_t(), k);
    c[n - k] = -q;
  }
  // det(L - lambda I) = (-1)^n det(lambda I - L).
  if (n % 2 == 1)
    for (auto& x : c) x = -x;
  return CharPoly{std::move(c)};
}

std::vector<double> numeric_spectrum(const IntegerMatrix& l, double tolerance) {
  if (!l.is_symmetric()) throw InvalidParameter("numeric_spectrum: matrix is not symmetric");
  const auto n = static_cast<Eigen::Index>(l.dimension());
  Eigen::MatrixXd a(n, n);
  double norm = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = l(i, j).get_d();
      row += std::abs(a(i, j));
    }
    norm = std::max(norm, row);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success) throw PrecisionExhausted("numeric_spectrum: eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double bound = tolerance * norm;
  for (Eigen::Index k = 0; k < n; ++k) {
    const double residual = (a * vectors.col(k) - values(k) * vectors.col(k)).norm();
    if (residual > bound)
      throw PrecisionExhausted("numeric_spectrum: residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return {values.data(), values.data() + n};
}

bool isospectral(const Spectrum& a, const Spectrum& b) { return a == b; }

bool isospectral(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.dimension() != b.dimension()) return false;
  return char_poly(a) == char_poly(b);
}

}  // namespace torusear

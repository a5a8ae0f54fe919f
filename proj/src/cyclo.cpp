#include "torusear/cyclo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "torusear/errors.hpp"

namespace torusear {
namespace {

struct PrimePower {
  std::uint32_t p;
  std::uint32_t e;
  std::uint32_t q;  // p^e
};

constexpr std::uint32_t kSieveLimit = 1u << 20;

const std::vector<std::uint32_t>& smallest_prime_factors() {
  static const std::vector<std::uint32_t> spf = [] {
    std::vector<std::uint32_t> s(kSieveLimit, 0);
    for (std::uint32_t i = 2; i < kSieveLimit; ++i) {
      if (s[i] != 0) continue;
      for (std::uint64_t k = i; k < kSieveLimit; k += i)
        if (s[k] == 0) s[k] = i;
    }
    return s;
  }();
  return spf;
}

std::vector<PrimePower> factorize(std::uint32_t n) {
  std::vector<PrimePower> out;
  auto push = [&](std::uint32_t p) {
    if (!out.empty() && out.back().p == p) {
      ++out.back().e;
      out.back().q *= p;
    } else {
      out.push_back({p, 1, p});
    }
  };
  if (n < kSieveLimit) {
    const auto& spf = smallest_prime_factors();
    while (n > 1) {
      const std::uint32_t p = spf[n];
      push(p);
      n /= p;
    }
    return out;
  }
  for (std::uint32_t p = 2; static_cast<std::uint64_t>(p) * p <= n; ++p)
    while (n % p == 0) {
      push(p);
      n /= p;
    }
  if (n > 1) push(n);
  return out;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

using Term = CycloReal::Term;

void sort_and_merge(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Rational c = terms[i].coeff;
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].exponent == terms[i].exponent; ++j) c += terms[j].coeff;
    if (!c.is_zero()) terms[out++] = Term{terms[i].exponent, std::move(c)};
    i = j;
  }
  terms.resize(out);
}

// Rewrites every term whose p-component falls outside the Phi_q-reduced
// range using the relation zeta_q^v * Phi_q(zeta_q^(q/p)) = 0.
void reduce_prime(std::uint32_t n, const PrimePower& pp, std::vector<Term>& terms) {
  const std::uint64_t cof = n / pp.q;
  const std::uint64_t inv = mod_inverse(cof % pp.q, pp.q);
  const std::uint64_t step = n / pp.p;
  const std::uint64_t low = pp.q / pp.p;
  const std::uint64_t bad_digit = pp.p == 2 ? 1 : pp.p - 1;
  std::vector<Term> extra;
  bool changed = false;
  for (auto& t : terms) {
    const std::uint64_t comp = (t.exponent % pp.q) * inv % pp.q;
    if (comp / low != bad_digit) continue;
    changed = true;
    const Rational neg = -t.coeff;
    if (pp.p == 2) {
      t.exponent = static_cast<std::uint32_t>((t.exponent + step) % n);
      t.coeff = neg;
    } else {
      const std::uint32_t base = t.exponent;
      t.exponent = static_cast<std::uint32_t>((base + step) % n);
      t.coeff = neg;
      for (std::uint64_t s = 2; s < pp.p; ++s)
        extra.push_back(Term{static_cast<std::uint32_t>((base + s * step) % n), neg});
    }
  }
  if (!changed) return;
  terms.insert(terms.end(), std::make_move_iterator(extra.begin()),
               std::make_move_iterator(extra.end()));
  sort_and_merge(terms);
}

// Lowers the conductor while every exponent is divisible by a prime of it.
// The basis nests, so dividing exponents keeps the representation canonical.
std::uint32_t descend(std::uint32_t n, std::vector<Term>& terms) {
  if (terms.empty()) return 1;
  for (const auto& pp : factorize(n)) {
    for (std::uint32_t k = 0; k < pp.e; ++k) {
      const std::uint32_t p = pp.p;
      const bool all = std::all_of(terms.begin(), terms.end(),
                                   [p](const Term& t) { return t.exponent % p == 0; });
      if (!all) break;
      for (auto& t : terms) t.exponent /= p;
      n /= p;
    }
  }
  return n;
}

double direct_approx(std::uint32_t n, const std::vector<Term>& terms, double* error) {
  double sum = 0.0;
  double abs_sum = 0.0;
  for (const auto& t : terms) {
    const double c = t.coeff.to_double();
    const double angle = 2.0 * M_PI * static_cast<double>(t.exponent) / static_cast<double>(n);
    sum += c * std::cos(angle);
    abs_sum += std::abs(c);
  }
  *error = abs_sum * (static_cast<double>(terms.size()) + 24.0) * 0x1p-52;
  return sum;
}

std::size_t hash_terms(std::uint32_t n, const std::vector<Term>& terms) {
  std::size_t h = std::hash<std::uint32_t>{}(n) * 0x9E3779B97F4A7C15ULL;
  for (const auto& t : terms) {
    h ^= (static_cast<std::size_t>(t.exponent) * 0xC2B2AE3D27D4EB4FULL) + 0x165667B19E3779F9ULL +
         (h << 6) + (h >> 2);
    h ^= t.coeff.hash() + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::atomic<unsigned> g_max_cmp_precision{4096};

}  // namespace

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t r = 1;
  for (const auto& pp : factorize(n)) r *= (pp.q / pp.p) * (pp.p - 1);
  return r;
}

const CyclotomicPolynomial& cyclotomic_poly(std::uint32_t n) {
  if (n == 0) throw InvalidParameter("cyclotomic_poly: order must be positive");
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<CyclotomicPolynomial>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  // x^n - 1, then divide out Phi_d for every proper divisor d.
  std::vector<BigInt> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto& div = cyclotomic_poly(d).coefficients;
    const std::size_t dd = div.size() - 1;
    const std::size_t deg = poly.size() - 1;
    std::vector<BigInt> quot(deg - dd + 1, 0);
    for (std::size_t k = deg + 1; k-- > dd;) {
      const BigInt lead = poly[k];  // divisor is monic
      if (lead == 0) continue;
      quot[k - dd] = lead;
      for (std::size_t i = 0; i <= dd; ++i)
        if (div[i] != 0) poly[k - dd + i] -= lead * div[i];
    }
    for (std::size_t i = 0; i < dd; ++i)
      if (poly[i] != 0) throw std::logic_error("cyclotomic_poly: inexact division");
    poly = std::move(quot);
  }
  auto result = std::make_unique<CyclotomicPolynomial>();
  result->order = n;
  result->coefficients = std::move(poly);
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.emplace(n, std::move(result));
  return *it->second;
}

CycloReal::CycloReal() {
  static const std::shared_ptr<const Data> zero = [] {
    auto d = std::make_shared<Data>();
    d->hash = hash_terms(1, d->terms);
    return d;
  }();
  data_ = zero;
}

CycloReal::CycloReal(const Rational& q) : CycloReal() {
  if (q.is_zero()) return;
  std::vector<Term> terms{Term{0, q}};
  const double a = q.to_double();
  const double err = std::abs(a) * 0x1p-52;
  *this = make(1, std::move(terms), &a, &err);
}

CycloReal CycloReal::make(std::uint32_t conductor, std::vector<Term> canonical_terms,
                          const double* approx, const double* approx_error) {
  if (canonical_terms.empty()) return CycloReal();
  auto d = std::make_shared<Data>();
  d->conductor = conductor;
  d->terms = std::move(canonical_terms);
  if (approx != nullptr) {
    d->approx = *approx;
    d->approx_error = *approx_error;
  } else {
    d->approx = direct_approx(d->conductor, d->terms, &d->approx_error);
  }
  d->hash = hash_terms(d->conductor, d->terms);
  return CycloReal(std::shared_ptr<const Data>(std::move(d)));
}

CycloReal CycloReal::reduce(std::uint32_t conductor, std::vector<Term> raw) {
  sort_and_merge(raw);
  for (const auto& pp : factorize(conductor)) reduce_prime(conductor, pp, raw);
  const std::uint32_t n = descend(conductor, raw);
  return make(n, std::move(raw), nullptr, nullptr);
}

CycloReal CycloReal::from_power_sum(std::uint32_t conductor,
                                    std::span<const std::pair<std::int64_t, Rational>> terms) {
  if (conductor == 0) throw InvalidParameter("CycloReal: conductor must be positive");
  std::vector<Term> raw;
  std::vector<Term> conj;
  raw.reserve(terms.size());
  const auto n = static_cast<std::int64_t>(conductor);
  for (const auto& [e, c] : terms) {
    const auto r = static_cast<std::uint32_t>(((e % n) + n) % n);
    raw.push_back(Term{r, c});
    conj.push_back(Term{static_cast<std::uint32_t>((n - r) % n), c});
  }
  CycloReal value = reduce(conductor, std::move(raw));
  if (!(reduce(conductor, std::move(conj)) == value))
    throw InvalidParameter("CycloReal: value is not real (not fixed by complex conjugation)");
  return value;
}

CycloReal CycloReal::from_power_basis(std::uint32_t conductor, std::span<const Rational> coeffs) {
  std::vector<std::pair<std::int64_t, Rational>> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (!coeffs[k].is_zero()) terms.emplace_back(static_cast<std::int64_t>(k), coeffs[k]);
  return from_power_sum(conductor, terms);
}

CycloReal combine(const CycloReal& a, const CycloReal& b, bool subtract) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return subtract ? -b : b;
  const std::uint32_t na = a.conductor();
  const std::uint32_t nb = b.conductor();
  const std::uint32_t l = std::lcm(na, nb);
  const std::uint32_t fa = l / na;
  const std::uint32_t fb = l / nb;
  const auto ta = a.terms();
  const auto tb = b.terms();
  std::vector<Term> out;
  out.reserve(ta.size() + tb.size());
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    const std::uint64_t ea = i < ta.size() ? std::uint64_t{ta[i].exponent} * fa : UINT64_MAX;
    const std::uint64_t eb = j < tb.size() ? std::uint64_t{tb[j].exponent} * fb : UINT64_MAX;
    if (ea < eb) {
      out.push_back(Term{static_cast<std::uint32_t>(ea), ta[i++].coeff});
    } else if (eb < ea) {
      out.push_back(Term{static_cast<std::uint32_t>(eb), subtract ? -tb[j].coeff : tb[j].coeff});
      ++j;
    } else {
      Rational c = subtract ? ta[i].coeff - tb[j].coeff : ta[i].coeff + tb[j].coeff;
      if (!c.is_zero()) out.push_back(Term{static_cast<std::uint32_t>(ea), std::move(c)});
      ++i;
      ++j;
    }
  }
  const std::uint32_t n = descend(l, out);
  const double x = subtract ? a.approx() - b.approx() : a.approx() + b.approx();
  const double err = a.approx_error() + b.approx_error() + std::abs(x) * 0x1p-52;
  return CycloReal::make(n, std::move(out), &x, &err);
}

CycloReal operator+(const CycloReal& a, const CycloReal& b) { return combine(a, b, false); }
CycloReal operator-(const CycloReal& a, const CycloReal& b) { return combine(a, b, true); }

CycloReal operator-(const CycloReal& a) {
  if (a.is_zero()) return a;
  std::vector<CycloReal::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.coeff = -t.coeff;
  const double x = -a.approx();
  const double err = a.approx_error();
  return CycloReal::make(a.conductor(), std::move(terms), &x, &err);
}

CycloReal operator*(const CycloReal& a, const Rational& q) {
  if (q.is_zero() || a.is_zero()) return CycloReal();
  std::vector<CycloReal::Term> terms(a.terms().begin(), a.terms().end());
  for (auto& t : terms) t.coeff *= q;
  const double qd = q.to_double();
  const double x = a.approx() * qd;
  const double err = a.approx_error() * std::abs(qd) * (1 + 0x1p-50) + std::abs(x) * 0x1p-51;
  return CycloReal::make(a.conductor(), std::move(terms), &x, &err);
}

bool operator==(const CycloReal& a, const CycloReal& b) {
  if (a.data_ == b.data_) return true;
  return a.data_->hash == b.data_->hash && a.data_->conductor == b.data_->conductor &&
         a.data_->terms == b.data_->terms;
}

bool CycloReal::check_invariants() const {
  const std::uint32_t n = conductor();
  if (n == 1) return terms().size() <= 1 && (terms().empty() || terms()[0].exponent == 0);
  if (n % 4 == 2) return false;
  const auto primes = factorize(n);
  for (const auto& t : terms()) {
    if (t.exponent >= n || t.coeff.is_zero()) return false;
    for (const auto& pp : primes) {
      const std::uint64_t comp =
          (t.exponent % pp.q) * mod_inverse((n / pp.q) % pp.q, pp.q) % pp.q;
      const std::uint64_t digit = comp / (pp.q / pp.p);
      if (digit == (pp.p == 2 ? 1u : pp.p - 1)) return false;
    }
  }
  for (const auto& pp : primes) {
    const bool all = std::all_of(terms().begin(), terms().end(),
                                 [&](const Term& t) { return t.exponent % pp.p == 0; });
    if (all) return false;
  }
  std::vector<std::pair<std::int64_t, Rational>> conj;
  for (const auto& t : terms()) conj.emplace_back(-static_cast<std::int64_t>(t.exponent), t.coeff);
  std::vector<Term> raw;
  for (const auto& [e, c] : conj)
    raw.push_back(Term{static_cast<std::uint32_t>(((e % n) + n) % n), c});
  return reduce(n, std::move(raw)) == *this;
}

std::vector<Rational> CycloReal::power_basis_coeffs() const {
  const std::uint32_t n = conductor();
  const auto& phi = cyclotomic_poly(n).coefficients;
  const std::size_t deg = phi.size() - 1;
  std::vector<Rational> poly(std::max<std::size_t>(n, deg), Rational());
  for (const auto& t : terms()) poly[t.exponent] += t.coeff;
  std::vector<std::pair<std::size_t, Rational>> phi_nz;
  for (std::size_t i = 0; i < deg; ++i)
    if (phi[i] != 0) phi_nz.emplace_back(i, Rational(phi[i]));
  for (std::size_t k = poly.size(); k-- > deg;) {
    if (poly[k].is_zero()) continue;
    const Rational lead = poly[k];
    poly[k] = Rational();
    for (const auto& [i, c] : phi_nz) poly[k - deg + i] -= lead * c;
  }
  poly.resize(deg);
  return poly;
}

std::string CycloReal::to_string() const {
  std::ostringstream os;
  os << "cyclo(" << conductor() << ";";
  const auto coeffs = power_basis_coeffs();
  for (std::size_t k = 0; k < coeffs.size(); ++k) os << (k == 0 ? " " : ", ") << coeffs[k].to_string();
  if (coeffs.empty()) os << " 0";
  os << ")";
  return os.str();
}

CycloReal CycloReal::parse(const std::string& text) {
  const auto open = text.find("cyclo(");
  if (open == std::string::npos) return CycloReal(Rational::parse(text));
  const auto semi = text.find(';', open);
  const auto close = text.rfind(')');
  if (semi == std::string::npos || close == std::string::npos || close < semi)
    throw InvalidParameter("CycloReal::parse: malformed '" + text + "'");
  std::uint32_t n = 0;
  try {
    const long v = std::stol(text.substr(open + 6, semi - open - 6));
    if (v <= 0) throw InvalidParameter("CycloReal::parse: conductor must be positive");
    n = static_cast<std::uint32_t>(v);
  } catch (const std::logic_error&) {
    throw InvalidParameter("CycloReal::parse: bad conductor in '" + text + "'");
  }
  std::vector<Rational> coeffs;
  std::stringstream body(text.substr(semi + 1, close - semi - 1));
  std::string item;
  while (std::getline(body, item, ',')) coeffs.push_back(Rational::parse(item));
  return from_power_basis(n, coeffs);
}

CycloReal eig_value(std::int64_t j, std::int64_t m) {
  if (m < 1) throw InvalidParameter("eig_value: m must be positive");
  j = ((j % m) + m) % m;
  if (j == 0) return CycloReal();
  const std::int64_t g = std::gcd(j, m);
  j /= g;
  m /= g;
  const std::pair<std::int64_t, Rational> terms[] = {{0, Rational(2)}, {j, Rational(-1)}, {m - j, Rational(-1)}};
  return CycloReal::from_power_sum(static_cast<std::uint32_t>(m), terms);
}

FloatApprox to_float(const CycloReal& a, unsigned bits) {
  if (bits < 2) bits = 2;
  if (a.is_zero()) return {BigFloat(bits), BigFloat(bits)};
  const auto terms = a.terms();
  long extra = 24;
  for (std::size_t s = terms.size(); s > 0; s >>= 1) ++extra;
  const mpfr_prec_t w = static_cast<mpfr_prec_t>(bits) + extra;
  const std::uint32_t n = a.conductor();
  const BigFloat two_pi_over_n = [&] {
    BigFloat x = BigFloat::pi(w);
    mpfr_mul_ui(x.get(), x.get(), 2, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), n, MPFR_RNDN);
    return x;
  }();
  BigFloat sum(w);
  BigFloat abs_sum(64);
  BigFloat angle(w), c(w), term(w);
  for (const auto& t : terms) {
    mpfr_mul_ui(angle.get(), two_pi_over_n.get(), t.exponent, MPFR_RNDN);
    mpfr_cos(term.get(), angle.get(), MPFR_RNDN);
    const mpq_class q = t.coeff.to_mpq();
    mpfr_set_q(c.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), c.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    BigFloat ac(64);
    mpfr_set_q(ac.get(), q.get_mpq_t(), MPFR_RNDU);
    mpfr_abs(ac.get(), ac.get(), MPFR_RNDU);
    mpfr_add(abs_sum.get(), abs_sum.get(), ac.get(), MPFR_RNDU);
  }
  // Per term: angle and cosine contribute <= 21 ulps, the product one more;
  // the running sum adds <= |sum of |c|| ulp per addition.
  BigFloat bound(64);
  mpfr_mul_ui(bound.get(), abs_sum.get(), static_cast<unsigned long>(terms.size() + 24), MPFR_RNDU);
  mpfr_mul_2si(bound.get(), bound.get(), -static_cast<long>(w) + 1, MPFR_RNDU);
  return {std::move(sum), std::move(bound)};
}

std::string to_decimal(const CycloReal& a, int digits) {
  if (a.is_zero()) return "0";
  if (a.is_rational() && a.terms()[0].coeff.is_integer()) return a.terms()[0].coeff.to_string();
  const unsigned bits = static_cast<unsigned>(digits * 3.33) + 32;
  return to_float(a, bits).value.to_string(digits);
}

void set_max_cmp_precision(unsigned bits) { g_max_cmp_precision = std::max(64u, bits); }
unsigned max_cmp_precision() { return g_max_cmp_precision; }

std::strong_ordering cmp(const CycloReal& a, const CycloReal& b) {
  if (a.approx() + a.approx_error() < b.approx() - b.approx_error()) return std::strong_ordering::less;
  if (a.approx() - a.approx_error() > b.approx() + b.approx_error()) return std::strong_ordering::greater;
  if (a == b) return std::strong_ordering::equal;
  const CycloReal d = a - b;
  if (std::abs(d.approx()) > d.approx_error())
    return d.approx() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  const unsigned cap = max_cmp_precision();
  for (unsigned bits = 64; bits <= cap; bits *= 2) {
    const FloatApprox f = to_float(d, bits);
    if (mpfr_cmpabs(f.value.get(), f.error_bound.get()) > 0)
      return f.value.sign() < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  throw PrecisionExhausted("cmp: values not separated within " + std::to_string(cap) + " bits");
}

}  // namespace torusear

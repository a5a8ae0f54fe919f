#include "torusear/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "torusear/errors.hpp"

namespace torusear {
namespace {

using i128 = __int128;

constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

// INT64_MIN is excluded so that negation never overflows.
bool fits_small(i128 v) { return v >= -static_cast<i128>(kSmallMax) && v <= kSmallMax; }

bool fits_small(const mpz_class& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2) <= 63;
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

mpz_class to_mpz(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidParameter("Rational: zero denominator");
  *this = from_mpq([&] {
    mpq_class q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q.canonicalize();
    return q;
  }());
}

Rational::Rational(const mpq_class& value) {
  mpq_class q = value;
  q.canonicalize();
  *this = from_mpq(std::move(q));
}

Rational::Rational(const Rational& other)
    : num_(other.num_),
      den_(other.den_),
      big_(other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr) {}

Rational& Rational::operator=(const Rational& other) {
  if (this != &other) {
    num_ = other.num_;
    den_ = other.den_;
    big_ = other.big_ ? std::make_unique<mpq_class>(*other.big_) : nullptr;
  }
  return *this;
}

Rational Rational::from_mpq(mpq_class value) {
  Rational r;
  if (fits_small(value.get_num()) && fits_small(value.get_den())) {
    r.num_ = value.get_num().get_si();
    r.den_ = value.get_den().get_si();
  } else {
    r.big_ = std::make_unique<mpq_class>(std::move(value));
  }
  return r;
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw InvalidParameter("Rational::parse: empty string");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t frac = s.size() - dot - 1;
      mpz_class num(digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      return Rational(mpq_class(num, den));
    }
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw InvalidParameter("Rational::parse: zero denominator");
    return Rational(q);
  } catch (const std::invalid_argument&) {
    throw InvalidParameter("Rational::parse: not a rational literal: '" + s + "'");
  }
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

BigInt Rational::numerator() const { return big_ ? BigInt(big_->get_num()) : BigInt(static_cast<long>(num_)); }
BigInt Rational::denominator() const { return big_ ? BigInt(big_->get_den()) : BigInt(static_cast<long>(den_)); }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return den_ == 1 ? static_cast<double>(num_) : static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Rational::hash() const {
  if (!big_) {
    std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(den_) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
  return std::hash<std::string>{}(big_->get_str(16));
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      const i128 s = static_cast<i128>(a.num_) + b.num_;
      if (fits_small(s)) return Rational(static_cast<std::int64_t>(s));
    } else {
      i128 num = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
      i128 den = static_cast<i128>(a.den_) * b.den_;
      const i128 g = gcd128(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
      if (num == 0) return Rational();
      if (fits_small(num) && fits_small(den)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
      }
      return Rational::from_mpq(mpq_class(to_mpz(num), to_mpz(den)));
    }
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational& a) {
  if (!a.big_) {
    Rational r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  return Rational::from_mpq(-*a.big_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      const i128 p = static_cast<i128>(a.num_) * b.num_;
      if (fits_small(p)) return Rational(static_cast<std::int64_t>(p));
    } else {
      i128 num = static_cast<i128>(a.num_) * b.num_;
      i128 den = static_cast<i128>(a.den_) * b.den_;
      const i128 g = gcd128(num, den);
      if (g > 1) {
        num /= g;
        den /= g;
      }
      if (num == 0) return Rational();
      if (fits_small(num) && fits_small(den)) {
        Rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
      }
      return Rational::from_mpq(mpq_class(to_mpz(num), to_mpz(den)));
    }
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw InvalidParameter("Rational: division by zero");
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;  // canonical: inline iff fits
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    const i128 l = static_cast<i128>(a.num_) * b.den_;
    const i128 r = static_cast<i128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

}  // namespace torusear

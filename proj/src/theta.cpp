#include "torusear/theta.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>

#include "torusear/errors.hpp"

namespace torusear {

ThetaFunction::ThetaFunction(std::vector<Term> terms) {
  std::vector<Spectrum::Entry> entries;
  entries.reserve(terms.size());
  for (auto& t : terms) entries.push_back({std::move(t.exponent), t.mult});
  const Spectrum merged = Spectrum::from_entries(std::move(entries));
  for (const auto& e : merged.entries()) terms_.push_back({e.value, e.mult});
}

std::uint64_t ThetaFunction::value_at_zero() const {
  std::uint64_t total = 0;
  for (const auto& t : terms_) total += t.mult;
  return total;
}

BigFloat ThetaFunction::evaluate(const BigFloat& t, mpfr_prec_t bits) const {
  BigFloat sum(bits);
  for (const auto& term : terms_) {
    const FloatApprox mu = to_float(term.exponent, static_cast<unsigned>(bits) + 32);
    sum += BigFloat(mpz_class(static_cast<unsigned long>(term.mult)), bits) * exp(-(mu.value * t));
  }
  return sum;
}

ThetaFunction theta_from_spectrum(const Spectrum& s) {
  std::vector<ThetaFunction::Term> terms;
  terms.reserve(s.distinct_count());
  for (const auto& e : s.entries()) terms.push_back({e.value, e.mult});
  return ThetaFunction(ThetaFunction::Sorted{}, std::move(terms));
}

Spectrum spectrum_from_theta(const ThetaFunction& f) {
  Spectrum s;
  s.entries_.reserve(f.terms().size());
  for (const auto& t : f.terms()) s.entries_.push_back({t.exponent, t.mult});
  s.total_ = f.value_at_zero();
  return s;
}

ThetaFunction theta_product(const ThetaFunction& f, const ThetaFunction& g) {
  return theta_from_spectrum(spectrum_sum(spectrum_from_theta(f), spectrum_from_theta(g)));
}

ThetaFunction theta_divide(const ThetaFunction& numerator, const ThetaFunction& divisor) {
  const auto num = numerator.terms();
  const auto div = divisor.terms();
  if (div.empty() || !div.front().exponent.is_zero())
    throw InvalidParameter("theta_divide: divisor must start with exponent 0");
  const std::uint64_t c0 = div.front().mult;

  std::unordered_map<CycloReal, std::size_t, CycloRealHash> index;
  index.reserve(num.size());
  std::vector<std::int64_t> remaining(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    index.emplace(num[i].exponent, i);
    remaining[i] = static_cast<std::int64_t>(num[i].mult);
  }

  std::vector<ThetaFunction::Term> quotient;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const std::int64_t c = remaining[i];
    if (c == 0) continue;
    if (c % static_cast<std::int64_t>(c0) != 0)
      throw NotAProduct("theta_divide: multiplicity " + std::to_string(c) + " not divisible by " +
                        std::to_string(c0));
    const std::int64_t q = c / static_cast<std::int64_t>(c0);
    quotient.push_back({num[i].exponent, static_cast<std::uint64_t>(q)});
    remaining[i] = 0;
    for (std::size_t k = 1; k < div.size(); ++k) {
      auto it = index.find(num[i].exponent + div[k].exponent);
      if (it == index.end()) throw NotAProduct("theta_divide: product term missing from numerator");
      std::int64_t& r = remaining[it->second];
      r -= q * static_cast<std::int64_t>(div[k].mult);
      if (r < 0) throw NotAProduct("theta_divide: negative intermediate multiplicity");
    }
  }
  return ThetaFunction(ThetaFunction::Sorted{}, std::move(quotient));
}

std::vector<NumericThetaTerm> theta_divide_numeric(std::span<const NumericThetaTerm> numerator,
                                                   std::span<const NumericThetaTerm> divisor,
                                                   double cluster_tolerance) {
  auto cluster = [&](std::span<const NumericThetaTerm> in) {
    std::vector<NumericThetaTerm> sorted(in.begin(), in.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.exponent < b.exponent; });
    std::vector<NumericThetaTerm> out;
    for (const auto& t : sorted) {
      if (t.mult == 0) continue;
      if (!out.empty() && t.exponent - out.back().exponent <= cluster_tolerance)
        out.back().mult += t.mult;
      else
        out.push_back(t);
    }
    return out;
  };
  const auto num = cluster(numerator);
  const auto div = cluster(divisor);
  if (div.empty() || std::abs(div.front().exponent) > cluster_tolerance)
    throw InvalidParameter("theta_divide_numeric: divisor must start with exponent 0");
  const std::uint64_t c0 = div.front().mult;

  auto find = [&](double x) -> std::optional<std::size_t> {
    auto it = std::lower_bound(num.begin(), num.end(), x - cluster_tolerance,
                               [](const NumericThetaTerm& t, double v) { return t.exponent < v; });
    if (it != num.end() && std::abs(it->exponent - x) <= cluster_tolerance)
      return static_cast<std::size_t>(it - num.begin());
    return std::nullopt;
  };

  std::vector<std::int64_t> remaining;
  for (const auto& t : num) remaining.push_back(static_cast<std::int64_t>(t.mult));
  std::vector<NumericThetaTerm> quotient;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const std::int64_t c = remaining[i];
    if (c == 0) continue;
    if (c % static_cast<std::int64_t>(c0) != 0)
      throw NotAProduct("theta_divide_numeric: multiplicity not divisible by divisor constant term");
    const std::int64_t q = c / static_cast<std::int64_t>(c0);
    quotient.push_back({num[i].exponent, static_cast<std::uint64_t>(q)});
    remaining[i] = 0;
    for (std::size_t k = 1; k < div.size(); ++k) {
      const auto j = find(num[i].exponent + div[k].exponent);
      if (!j) throw NotAProduct("theta_divide_numeric: product term missing from numerator");
      remaining[*j] -= q * static_cast<std::int64_t>(div[k].mult);
      if (remaining[*j] < 0) throw NotAProduct("theta_divide_numeric: negative intermediate multiplicity");
    }
  }
  return quotient;
}

ThetaSampler make_theta_sampler(const ThetaFunction& f) {
  return [f](const BigFloat& t, mpfr_prec_t bits) { return f.evaluate(t, bits); };
}

ThetaSampler make_exponential_sum_sampler(std::vector<std::pair<Rational, std::uint64_t>> terms) {
  return [terms = std::move(terms)](const BigFloat& t, mpfr_prec_t bits) {
    BigFloat sum(bits);
    for (const auto& [mu, c] : terms)
      sum += BigFloat(mpz_class(static_cast<unsigned long>(c)), bits) *
             exp(-(BigFloat(mu.to_mpq(), bits + 32) * t));
    return sum;
  };
}

namespace {

constexpr double kLn2 = 0.6931471805599453;

// Partial-pivot Gaussian elimination; false if the system is singular at this precision.
bool solve_linear(std::vector<std::vector<BigFloat>>& a, std::vector<BigFloat>& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col].is_zero()) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const BigFloat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    BigFloat s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * b[c];
    b[i] = s / a[i][i];
  }
  return true;
}

struct Fit {
  std::vector<BigFloat> mu;
  std::vector<BigFloat> coeff;
};

// Newton interpolation of the model sum_j coeff_j exp(-mu_j t) at
// t_i = start + i*step. All mu are free; the last coefficient is free when
// `free_last`, the others stay fixed.
bool newton_fit(const ThetaSampler& sampler, Fit& fit, bool free_last, double start, double step,
                mpfr_prec_t bits) {
  const std::size_t terms = fit.mu.size();
  const std::size_t unknowns = terms + (free_last ? 1 : 0);
  for (auto& m : fit.mu) m = BigFloat(m) + BigFloat(bits);  // lift to working precision
  for (auto& c : fit.coeff) c = BigFloat(c) + BigFloat(bits);

  std::vector<BigFloat> ts;
  std::vector<BigFloat> ys;
  for (std::size_t i = 0; i < unknowns; ++i) {
    ts.emplace_back(start + static_cast<double>(i) * step, bits);
    ys.push_back(sampler(ts.back(), bits));
  }

  auto residual = [&](const Fit& f, std::vector<BigFloat>* out) {
    double worst = 0.0;
    for (std::size_t i = 0; i < unknowns; ++i) {
      BigFloat model(bits);
      for (std::size_t j = 0; j < terms; ++j) model += f.coeff[j] * exp(-(f.mu[j] * ts[i]));
      BigFloat r = model - ys[i];
      if (!ys[i].is_zero()) worst = std::max(worst, std::abs((r / ys[i]).to_double()));
      if (out) out->push_back(std::move(r));
    }
    return worst;
  };

  const double tiny = std::ldexp(1.0, -static_cast<int>(bits * 2 / 5));
  // Truncation of the model bounds how far the residual can fall; once steps
  // are this small a stall counts as convergence.
  constexpr double kStalled = 1e-20;
  double last_step = INFINITY;
  for (int iter = 0; iter < 80; ++iter) {
    std::vector<BigFloat> f;
    const double norm = residual(fit, &f);
    std::vector<std::vector<BigFloat>> jac(unknowns, std::vector<BigFloat>(unknowns, BigFloat(bits)));
    for (std::size_t i = 0; i < unknowns; ++i) {
      for (std::size_t j = 0; j < terms; ++j) {
        const BigFloat e = exp(-(fit.mu[j] * ts[i]));
        jac[i][j] = -(fit.coeff[j] * ts[i] * e);
        if (free_last && j + 1 == terms) jac[i][terms] = e;
      }
    }
    for (auto& v : f) v = -v;
    if (!solve_linear(jac, f)) return false;

    double step_size = 0.0;
    for (std::size_t j = 0; j < terms; ++j) step_size = std::max(step_size, std::abs(f[j].to_double()));
    if (free_last) {
      const double c = std::abs(fit.coeff.back().to_double());
      step_size = std::max(step_size, std::abs(f[terms].to_double()) / std::max(1.0, c));
    }

    // Damped update: halve until the residual does not grow.
    BigFloat damping(1.0, bits);
    Fit next;
    bool improved = false;
    for (int h = 0; h < 40; ++h) {
      next = fit;
      for (std::size_t j = 0; j < terms; ++j) next.mu[j] += damping * f[j];
      if (free_last) next.coeff.back() += damping * f[terms];
      if (residual(next, nullptr) <= norm || norm < tiny) {
        improved = true;
        break;
      }
      damping = damping * BigFloat(0.5, bits);
    }
    if (!improved) return std::min(last_step, step_size) < kStalled;
    fit = std::move(next);
    if (step_size < tiny) return true;
    last_step = step_size;
  }
  return last_step < kStalled;
}

mpfr_prec_t bits_for(double spread, double t_max, std::size_t unknowns, mpfr_prec_t floor_bits) {
  const double need = std::max(0.0, spread + 1.0) * t_max / kLn2 + 64.0 * static_cast<double>(unknowns + 2);
  return std::max(floor_bits, static_cast<mpfr_prec_t>(std::ceil(need)));
}

struct Estimate {
  double mu;
  double coeff;
  double tau;
};

}  // namespace

std::vector<RecoveredTerm> spectrum_from_theta_samples(const ThetaSampler& sampler, int degree_bound,
                                                       const RecoveryOptions& options) {
  if (degree_bound < 1) throw InvalidParameter("spectrum_from_theta_samples: degree_bound must be >= 1");
  const mpfr_prec_t start_bits = std::max<mpfr_prec_t>(options.start_bits, 64);

  const double theta0 = sampler(BigFloat(start_bits), start_bits).to_double();
  const double total_d = std::round(theta0);
  if (!std::isfinite(theta0) || total_d < 1.0 || std::abs(theta0 - total_d) > 1e-6)
    throw InvalidSampler("spectrum_from_theta_samples: Theta(0) = " + std::to_string(theta0) +
                         " is not a positive integer");
  const auto total = static_cast<std::uint64_t>(total_d);

  Fit fit;
  std::vector<std::uint64_t> mults;
  std::uint64_t found = 0;
  double window = 0.0;  // sample time at which the previous fit was accepted
  mpfr_prec_t bits = start_bits;

  auto residual_at = [&](double t, mpfr_prec_t p, double* theta_mag) {
    const BigFloat tb(t, p);
    const BigFloat theta = sampler(tb, p);
    BigFloat r = theta;
    for (std::size_t j = 0; j < fit.mu.size(); ++j) r -= fit.coeff[j] * exp(-(fit.mu[j] * tb));
    if (theta_mag) *theta_mag = static_cast<double>(abs(theta).exponent2());
    return r;
  };

  while (found < total) {
    const std::size_t k = fit.mu.size();
    if (static_cast<int>(k) >= degree_bound)
      throw RecoveryFailure("spectrum_from_theta_samples: " + std::to_string(found) + " of " +
                            std::to_string(total) + " accounted for after degree_bound = " +
                            std::to_string(degree_bound) + " terms");

    // Log-ratio scan of the residual at tau, 2 tau for doubling tau.
    std::optional<Estimate> best;
    const double tau_cap = k == 0 ? 64.0 : std::max(4.0, window / 2.0);
    for (mpfr_prec_t p = bits; !best && p <= options.max_bits; p *= 2) {
      double prev_est = NAN;
      double best_diff = INFINITY;
      for (double tau = 0.5; tau <= tau_cap; tau *= 2.0) {
        double mag1 = 0, mag2 = 0;
        const BigFloat r1 = residual_at(tau, p, &mag1);
        const BigFloat r2 = residual_at(2.0 * tau, p, &mag2);
        const double floor2 = mag2 - static_cast<double>(p) + 40.0;
        if (r1.sign() <= 0 || r2.sign() <= 0 || static_cast<double>(r2.exponent2()) < floor2) break;
        const double est = log(r1 / r2).to_double() / tau;
        const double diff = std::isnan(prev_est) ? INFINITY : std::abs(est - prev_est);
        if (!best || diff <= best_diff) {
          best_diff = diff;
          const double coeff = (r1 * exp(BigFloat(est * tau, p))).to_double();
          best = Estimate{est, coeff, tau};
        } else if (diff > 4.0 * best_diff) {
          break;  // contamination from earlier terms has taken over
        }
        prev_est = est;
      }
    }
    if (!best)
      throw RecoveryFailure("spectrum_from_theta_samples: residual vanished with " + std::to_string(found) +
                            " of " + std::to_string(total) + " accounted for");
    if (k == 0 && best->mu < -1e-9)
      throw InvalidSampler("spectrum_from_theta_samples: residual grows, exponent estimate " +
                           std::to_string(best->mu));

    // Joint refinement, doubling the window until two fits agree.
    Fit trial = fit;
    trial.mu.emplace_back(best->mu, bits);
    trial.coeff.emplace_back(best->coeff, bits);
    std::optional<Fit> previous;
    double t_start = std::max(4.0, best->tau);
    bool accepted = false;
    while (!accepted) {
      if (t_start > options.max_window)
        throw RecoveryFailure("spectrum_from_theta_samples: term " + std::to_string(k) +
                              " did not separate within the sampling window");
      const double spread = trial.mu.back().to_double() - trial.mu.front().to_double();
      const mpfr_prec_t p = bits_for(spread, t_start + static_cast<double>(k + 2), k + 2, start_bits);
      if (p > options.max_bits)
        throw RecoveryFailure("spectrum_from_theta_samples: precision cap reached at term " + std::to_string(k));
      Fit attempt = previous ? *previous : trial;
      if (!newton_fit(sampler, attempt, true, t_start, 1.0, p)) {
        t_start *= 2.0;
        continue;
      }
      const double mu_new = attempt.mu.back().to_double();
      const double c_new = attempt.coeff.back().to_double();
      if (previous) {
        const double drift = std::abs(mu_new - previous->mu.back().to_double());
        if (drift < 1e-10 * (1.0 + std::abs(mu_new)) && std::abs(c_new - std::round(c_new)) < 0.25) {
          accepted = true;
          bits = p;
          window = t_start;
        }
      }
      previous = std::move(attempt);
      if (!accepted) t_start *= 2.0;
    }

    const double c_new = previous->coeff.back().to_double();
    const double rounded = std::round(c_new);
    if (rounded < 1.0)
      throw RecoveryFailure("spectrum_from_theta_samples: coefficient " + std::to_string(c_new) +
                            " for exponent " + std::to_string(previous->mu.back().to_double()) +
                            " rounds to a non-positive integer");
    const auto c_int = static_cast<std::uint64_t>(rounded);
    if (found + c_int > total)
      throw RecoveryFailure("spectrum_from_theta_samples: coefficients exceed Theta(0)");
    if (k > 0 && !(previous->mu[k] > previous->mu[k - 1]))
      throw RecoveryFailure("spectrum_from_theta_samples: exponents out of order at term " + std::to_string(k));
    if (previous->mu.front().to_double() < -1e-9)
      throw InvalidSampler("spectrum_from_theta_samples: negative exponent " +
                           std::to_string(previous->mu.front().to_double()));

    fit = std::move(*previous);
    fit.coeff.back() = BigFloat(static_cast<double>(c_int), bits);
    mults.push_back(c_int);
    found += c_int;
  }

  // All coefficients known: the model is complete, so interpolation is unbiased.
  const std::size_t n = fit.mu.size();
  const double spread = fit.mu.back().to_double() - fit.mu.front().to_double();
  const mpfr_prec_t p = bits_for(spread, static_cast<double>(n + 2), n, start_bits) + 64;
  Fit a = fit;
  Fit b = fit;
  if (!newton_fit(sampler, a, false, 1.0, 1.0, p) || !newton_fit(sampler, b, false, 1.5, 1.0, p))
    throw RecoveryFailure("spectrum_from_theta_samples: final refinement did not converge");
  for (double t : {0.25, 0.75}) {
    const BigFloat tb(t, p);
    const BigFloat theta = sampler(tb, p);
    BigFloat model(p);
    for (std::size_t j = 0; j < n; ++j) model += a.coeff[j] * exp(-(a.mu[j] * tb));
    if (std::abs(((model - theta) / theta).to_double()) > 1e-20)
      throw RecoveryFailure("spectrum_from_theta_samples: recovered sum does not reproduce the samples");
  }

  std::vector<RecoveredTerm> out;
  for (std::size_t j = 0; j < n; ++j) {
    double mu = a.mu[j].to_double();
    const double err = std::abs(mu - b.mu[j].to_double()) + std::abs(mu) * 0x1p-52;
    if (j == 0 && std::abs(mu) < 1e-12) mu = 0.0;
    if (mu < 0.0) throw InvalidSampler("spectrum_from_theta_samples: negative exponent " + std::to_string(mu));
    out.push_back({mu, err, mults[j]});
  }
  return out;
}

}  // namespace torusear

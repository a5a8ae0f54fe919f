#include "torusear/hearing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "torusear/errors.hpp"
#include "torusear/theta.hpp"

namespace torusear {

std::uint64_t TorusShape::vertex_count() const {
  std::uint64_t n = 1;
  for (int m : dims) n *= static_cast<std::uint64_t>(m);
  return n;
}

TorusShape canonical_shape(std::span<const int> dims) {
  if (dims.empty()) throw InvalidParameter("canonical_shape: empty shape");
  for (int m : dims)
    if (m < 2) throw InvalidParameter("canonical_shape: factor " + std::to_string(m) + " is below 2");
  TorusShape s{{dims.begin(), dims.end()}};
  std::sort(s.dims.begin(), s.dims.end());
  return s;
}

namespace {

// Terms sorted ascending; returns 0 when no cycle matches.
int match_m_max(std::span<const ThetaFunction::Term> terms, std::uint64_t total) {
  if (total < 2 || terms.size() < 2 || !terms.front().exponent.is_zero()) return 0;
  const CycloReal& a = terms[1].exponent;
  // a = 4 sin^2(pi/m), so m = pi / asin(sqrt(a)/2); exact eq settles the rounding.
  const double x = std::clamp(std::sqrt(std::max(a.approx(), 0.0)) / 2.0, 0.0, 1.0);
  if (x == 0.0) return 0;
  const double guess = std::numbers::pi / std::asin(x);
  if (!std::isfinite(guess)) return 0;
  const auto lo = static_cast<std::int64_t>(std::floor(guess));
  for (std::int64_t m : {lo, lo + 1}) {
    if (m < 2 || static_cast<std::uint64_t>(m) > total) continue;
    if (a == eig_value(1, m)) return static_cast<int>(m);
  }
  return 0;
}

}  // namespace

int hear_m_max(const Spectrum& s) {
  const ThetaFunction theta = theta_from_spectrum(s);
  const int m = match_m_max(theta.terms(), s.total_count());
  if (m == 0) throw NotATorusSpectrum("hear_m_max: algebraic connectivity is not 4 sin^2(pi/m)", {});
  return m;
}

TorusShape hear_torus(const Spectrum& s) {
  if (s.total_count() < 2)
    throw NotATorusSpectrum("hear_torus: a torus has at least two vertices", {});
  std::vector<int> peeled;  // largest first
  ThetaFunction rest = theta_from_spectrum(s);
  while (rest.value_at_zero() > 1) {
    const int m = match_m_max(rest.terms(), rest.value_at_zero());
    if (m == 0)
      throw NotATorusSpectrum("hear_torus: algebraic connectivity matches no cycle", peeled);
    if (!peeled.empty() && m > peeled.back())
      throw NotATorusSpectrum("hear_torus: recovered factors are not non-increasing", peeled);
    try {
      rest = theta_divide(rest, theta_from_spectrum(cycle_spectrum(m)));
    } catch (const NotAProduct& e) {
      throw NotATorusSpectrum(std::string("hear_torus: ") + e.what() + " when dividing by C_" + std::to_string(m),
                              peeled);
    }
    peeled.push_back(m);
  }
  if (rest.value_at_zero() != 1 || !rest.terms().front().exponent.is_zero())
    throw NotATorusSpectrum("hear_torus: residual after peeling is not {0:1}", peeled);

  TorusShape shape = canonical_shape(peeled);
  if (torus_spectrum(shape.dims) != s)
    throw NotATorusSpectrum("hear_torus: re-multiplied spectrum differs from the input", peeled);
  return shape;
}

int hear_dimension(const Spectrum& s) { return static_cast<int>(hear_torus(s).dimension()); }

bool tori_isomorphic(const TorusShape& a, const TorusShape& b) { return a.dims == b.dims; }

namespace {

void extend_shapes(std::vector<int>& prefix, int min_factor, std::uint64_t budget, std::vector<TorusShape>& out) {
  for (int m = min_factor; static_cast<std::uint64_t>(m) <= budget; ++m) {
    prefix.push_back(m);
    out.push_back(TorusShape{prefix});
    extend_shapes(prefix, m, budget / static_cast<std::uint64_t>(m), out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<TorusShape> enumerate_shapes(std::uint64_t max_vertices) {
  std::vector<TorusShape> out;
  std::vector<int> prefix;
  extend_shapes(prefix, 2, max_vertices, out);
  return out;
}

}  // namespace torusear

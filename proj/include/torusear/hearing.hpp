#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "torusear/spectra.hpp"

namespace torusear {

/// Sorted cycle-factor list 2 <= m_1 <= ... <= m_p of C_{m_1} x ... x C_{m_p}.
struct TorusShape {
  std::vector<int> dims;

  std::uint64_t vertex_count() const;
  std::size_t dimension() const { return dims.size(); }

  friend bool operator==(const TorusShape&, const TorusShape&) = default;
  friend auto operator<=>(const TorusShape&, const TorusShape&) = default;
};

/// Sorts ascending. Entries below 2 are rejected; 4 is never rewritten as (2, 2).
TorusShape canonical_shape(std::span<const int> dims);

/// The m with algebraic_connectivity(s) == 4 sin^2(pi / m).
int hear_m_max(const Spectrum& s);

/// Recovers the shape whose torus spectrum is exactly `s`, peeling the
/// largest factor first. Throws NotATorusSpectrum with the factors found so far.
TorusShape hear_torus(const Spectrum& s);

int hear_dimension(const Spectrum& s);

bool tori_isomorphic(const TorusShape& a, const TorusShape& b);

/// Every canonical shape with at least one factor and vertex count <= max_vertices,
/// in lexicographic order of dims.
std::vector<TorusShape> enumerate_shapes(std::uint64_t max_vertices);

}  // namespace torusear

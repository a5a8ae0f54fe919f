#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torusear/errors.hpp"
#include "torusear/graph.hpp"
#include "torusear/spectra.hpp"

using namespace torusear;

namespace {

void expect_matches(const Spectrum& s, const std::vector<long double>& want, double tol = 1e-12) {
  const auto got = oracle::expand(s);
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], static_cast<double>(want[i]), tol) << i;
}

}  // namespace

TEST(Spectrum, TorusThreeByThree) {
  const std::vector<int> dims{3, 3};
  const Spectrum s = torus_spectrum(dims);
  ASSERT_EQ(s.distinct_count(), 3u);
  EXPECT_EQ(s.entries()[0], (Spectrum::Entry{CycloReal(0), 1}));
  EXPECT_EQ(s.entries()[1], (Spectrum::Entry{CycloReal(3), 4}));
  EXPECT_EQ(s.entries()[2], (Spectrum::Entry{CycloReal(6), 4}));
}

TEST(Spectrum, CycleSpectraAgainstClosedForm) {
  for (int m = 2; m <= 40; ++m) {
    const Spectrum s = cycle_spectrum(m);
    EXPECT_EQ(s.total_count(), static_cast<std::uint64_t>(m));
    EXPECT_EQ(s.distinct_count(), static_cast<std::size_t>(m / 2 + 1));
    expect_matches(s, oracle::torus_values({m}));
  }
  EXPECT_THROW(cycle_spectrum(1), InvalidParameter);
}

TEST(Spectrum, TorusAgainstClosedForm) {
  for (const std::vector<int>& dims : {std::vector<int>{2, 2}, {3, 5}, {4, 4, 2}, {6, 7}, {2, 3, 4, 5}})
    expect_matches(torus_spectrum(dims), oracle::torus_values(dims));
}

TEST(Spectrum, SumIsCommutativeAndAssociative) {
  const Spectrum a = cycle_spectrum(5), b = cycle_spectrum(8), c = cycle_spectrum(6);
  EXPECT_EQ(spectrum_sum(a, b), spectrum_sum(b, a));
  EXPECT_EQ(spectrum_sum(spectrum_sum(a, b), c), spectrum_sum(a, spectrum_sum(b, c)));
  const std::vector<int> dims{5, 8, 6};
  EXPECT_EQ(torus_spectrum(dims), spectrum_sum(spectrum_sum(a, b), c));
}

TEST(Spectrum, CirculantAgainstClosedForm) {
  const std::vector<int> jumps{2, 3, 4, 7};
  expect_matches(circulant_spectrum(20, jumps), oracle::circulant_values(20, jumps));
  const std::vector<int> one{1};
  EXPECT_EQ(circulant_spectrum(11, one), cycle_spectrum(11));
}

TEST(Spectrum, FromEntriesMergesAndDropsZeros) {
  const Spectrum s = Spectrum::from_entries({{CycloReal(2), 1}, {eig_value(1, 4), 2}, {CycloReal(1), 0}, {0, 1}});
  ASSERT_EQ(s.distinct_count(), 2u);
  EXPECT_EQ(s.entries()[1].mult, 3u);
  EXPECT_EQ(s.total_count(), 4u);
}

TEST(Spectrum, AlgebraicConnectivity) {
  const std::vector<int> dims{3, 7, 4};
  EXPECT_EQ(algebraic_connectivity(torus_spectrum(dims)), eig_value(1, 7));
  EXPECT_THROW(algebraic_connectivity(Spectrum::from_entries({{0, 3}})), DegenerateSpectrum);
}

TEST(Spectrum, TraceEqualsTwiceEdgeCount) {
  for (const std::vector<int>& dims : {std::vector<int>{2}, {3, 4}, {2, 5, 5}, {9, 10}}) {
    const Spectrum s = torus_spectrum(dims);
    CycloReal trace;
    for (const auto& e : s.entries()) trace += e.value * Rational(static_cast<std::int64_t>(e.mult));
    EXPECT_EQ(trace, CycloReal(static_cast<std::int64_t>(2 * torus_graph(dims).edge_count())));
  }
}

TEST(CharPoly, MatchesInterpolatedDeterminants) {
  std::mt19937 rng(11);
  std::vector<MultiGraph> graphs{cycle_graph(2), cycle_graph(7), complete_graph_k2(),
                                 torus_graph(std::vector<int>{2, 3}), circulant_graph(9, std::vector<int>{1, 3})};
  for (int i = 0; i < 6; ++i) {
    const std::uint32_t n = 3 + rng() % 6;
    std::vector<MultiGraph::Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = u + 1; v < n; ++v)
        if (rng() % 3 == 0) edges.push_back({u, v, 1 + static_cast<std::uint32_t>(rng() % 3)});
    graphs.emplace_back(n, edges);
  }
  for (const auto& g : graphs) {
    const IntegerMatrix l = laplacian(g);
    const CharPoly p = char_poly(l);
    EXPECT_EQ(p.coeffs, oracle::charpoly_by_interpolation(l));
    EXPECT_EQ(p.degree(), static_cast<int>(g.vertex_count()));
    EXPECT_EQ(p.coeffs[0], 0);  // L is singular
  }
}

TEST(CharPoly, HashIsStable) {
  const CharPoly p = char_poly(laplacian(cycle_graph(4)));
  EXPECT_EQ(p.hash(), char_poly(laplacian(cycle_graph(4))).hash());
  EXPECT_EQ(p.hash_hex().size(), 16u);
  EXPECT_NE(p.hash(), char_poly(laplacian(cycle_graph(5))).hash());
}

TEST(NumericSpectrum, AgreesWithExactSpectrum) {
  for (const std::vector<int>& dims : {std::vector<int>{2}, {5, 6}, {3, 3, 4}}) {
    const auto num = numeric_spectrum(laplacian(torus_graph(dims)));
    const auto want = oracle::torus_values(dims);
    ASSERT_EQ(num.size(), want.size());
    for (std::size_t i = 0; i < num.size(); ++i) EXPECT_NEAR(num[i], static_cast<double>(want[i]), 1e-9);
  }
  IntegerMatrix asym(2);
  asym(0, 1) = 1;
  EXPECT_THROW(numeric_spectrum(asym), InvalidParameter);
}

TEST(Isospectral, ExactAndMatrixRoutes) {
  const std::vector<int> a{2, 8}, b{4, 4};
  EXPECT_FALSE(isospectral(torus_spectrum(a), torus_spectrum(b)));
  EXPECT_FALSE(isospectral(laplacian(torus_graph(a)), laplacian(torus_graph(b))));
  const std::vector<int> c{3, 5}, d{5, 3};
  EXPECT_TRUE(isospectral(laplacian(torus_graph(c)), laplacian(torus_graph(d))));
  EXPECT_FALSE(isospectral(laplacian(cycle_graph(3)), laplacian(cycle_graph(4))));
}

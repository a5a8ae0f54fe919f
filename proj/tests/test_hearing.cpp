#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "torusear/errors.hpp"
#include "torusear/hearing.hpp"
#include "torusear/spectra.hpp"

using namespace torusear;

namespace {

std::vector<int> partial_of(const Spectrum& s) {
  try {
    hear_torus(s);
  } catch (const NotATorusSpectrum& e) {
    return e.partial();
  }
  ADD_FAILURE() << "expected NotATorusSpectrum";
  return {};
}

}  // namespace

TEST(CanonicalShape, SortsAndValidates) {
  EXPECT_EQ(canonical_shape(std::vector<int>{5, 2, 3}).dims, (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(canonical_shape(std::vector<int>{4}).dims, (std::vector<int>{4}));
  EXPECT_THROW(canonical_shape(std::vector<int>{1, 3}), InvalidParameter);
  EXPECT_THROW(canonical_shape(std::vector<int>{}), InvalidParameter);
  EXPECT_EQ(canonical_shape(std::vector<int>{3, 4, 5}).vertex_count(), 60u);
}

TEST(HearTorus, Examples) {
  EXPECT_EQ(hear_torus(torus_spectrum(std::vector<int>{5, 2, 3})).dims, (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(hear_torus(torus_spectrum(std::vector<int>{2})).dims, (std::vector<int>{2}));
  EXPECT_EQ(hear_torus(torus_spectrum(std::vector<int>{2, 2})).dims, (std::vector<int>{2, 2}));
  EXPECT_EQ(hear_torus(torus_spectrum(std::vector<int>{4})).dims, (std::vector<int>{4}));
  EXPECT_EQ(hear_m_max(torus_spectrum(std::vector<int>{3, 9, 4})), 9);
  EXPECT_EQ(hear_dimension(torus_spectrum(std::vector<int>{3, 9, 4})), 3);
}

TEST(HearTorus, RoundTripsAllSmallShapes) {
  for (const auto& shape : enumerate_shapes(300)) {
    const Spectrum s = torus_spectrum(shape.dims);
    ASSERT_EQ(hear_torus(s), shape);
    ASSERT_EQ(s.total_count(), shape.vertex_count());
  }
}

TEST(HearTorus, EqualOrderShapesHaveDistinctSpectra) {
  std::map<std::uint64_t, std::vector<TorusShape>> by_order;
  for (const auto& shape : enumerate_shapes(120)) by_order[shape.vertex_count()].push_back(shape);
  for (const auto& [n, shapes] : by_order)
    for (std::size_t i = 0; i < shapes.size(); ++i)
      for (std::size_t j = i + 1; j < shapes.size(); ++j)
        EXPECT_FALSE(torus_spectrum(shapes[i].dims) == torus_spectrum(shapes[j].dims)) << n;
}

TEST(HearTorus, RejectsNonTorusSpectra) {
  EXPECT_TRUE(partial_of(Spectrum::from_entries({{0, 1}})).empty());
  // C20(2,3,4,7) is 8-regular but not a torus.
  EXPECT_THROW(hear_torus(circulant_spectrum(20, std::vector<int>{2, 3, 4, 7})), NotATorusSpectrum);
  // The complete graph K_4 has spectrum {0, 4, 4, 4}.
  EXPECT_THROW(hear_torus(Spectrum::from_entries({{0, 1}, {4, 3}})), NotATorusSpectrum);
  EXPECT_THROW(hear_torus(Spectrum()), NotATorusSpectrum);
}

TEST(HearTorus, RejectsPerturbedSpectra) {
  std::mt19937 rng(17);
  const auto shapes = enumerate_shapes(200);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& shape = shapes[rng() % shapes.size()];
    const Spectrum s = torus_spectrum(shape.dims);
    std::vector<Spectrum::Entry> entries(s.entries().begin(), s.entries().end());
    switch (trial % 3) {
      case 0:  // bump one multiplicity
        entries[1 + rng() % (entries.size() - 1)].mult += 1;
        break;
      case 1:  // nudge one value by a rational amount
        entries[entries.size() - 1].value += Rational(1, 1000);
        break;
      default:  // duplicate the zero eigenvalue
        entries[0].mult += 1;
        break;
    }
    EXPECT_THROW(hear_torus(Spectrum::from_entries(entries)), NotATorusSpectrum)
        << "shape starting " << shape.dims.front();
  }
}

TEST(HearTorus, PartialFactorsAreReported) {
  // C_7 times K_4: the 7-cycle peels off, the K_4 residue does not.
  const Spectrum k4 = Spectrum::from_entries({{0, 1}, {4, 3}});
  const auto partial = partial_of(spectrum_sum(torus_spectrum(std::vector<int>{7}), k4));
  ASSERT_FALSE(partial.empty());
  EXPECT_EQ(partial.front(), 7);
}

TEST(HearDimension, BoundedByLogOfOrder) {
  for (const auto& shape : enumerate_shapes(512)) {
    const int p = hear_dimension(torus_spectrum(shape.dims));
    EXPECT_EQ(p, static_cast<int>(shape.dimension()));
    EXPECT_LE(std::uint64_t{1} << p, shape.vertex_count());
  }
}

TEST(EnumerateShapes, CountsAndOrder) {
  const auto shapes = enumerate_shapes(16);
  // Products <= 16 of sorted factors >= 2.
  std::size_t brute = 0;
  std::function<void(int, std::uint64_t)> count = [&](int lo, std::uint64_t prod) {
    for (int m = lo; prod * m <= 16; ++m) {
      ++brute;
      count(m, prod * m);
    }
  };
  count(2, 1);
  EXPECT_EQ(shapes.size(), brute);
  EXPECT_TRUE(std::is_sorted(shapes.begin(), shapes.end()));
  EXPECT_EQ(enumerate_shapes(5000).size(), 57956u);
}

TEST(ToriIsomorphic, ComparesCanonicalForms) {
  EXPECT_TRUE(tori_isomorphic(canonical_shape(std::vector<int>{3, 5}), canonical_shape(std::vector<int>{5, 3})));
  EXPECT_FALSE(tori_isomorphic(canonical_shape(std::vector<int>{4}), canonical_shape(std::vector<int>{2, 2})));
}

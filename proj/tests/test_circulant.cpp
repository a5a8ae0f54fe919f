#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "torusear/circulant.hpp"
#include "torusear/errors.hpp"
#include "torusear/io.hpp"

using namespace torusear;

namespace {

const CirculantSpec kA{20, {2, 3, 4, 7}};
const CirculantSpec kB{20, {3, 6, 7, 8}};

CirculantSpec scaled(const CirculantSpec& s, int r) {
  std::vector<int> jumps;
  for (int x : s.jumps) {
    const int y = x * r % s.n;
    jumps.push_back(std::min(y, s.n - y));
  }
  std::sort(jumps.begin(), jumps.end());
  return {s.n, jumps};
}

}  // namespace

TEST(CirculantSpec, ParseValidateAndPrint) {
  EXPECT_EQ(CirculantSpec::parse("20:2,3,4,7"), kA);
  EXPECT_EQ(kA.to_string(), "C20(2,3,4,7)");
  EXPECT_THROW(CirculantSpec::parse("20:10"), InvalidParameter);
  EXPECT_THROW(CirculantSpec::parse("20"), InvalidParameter);
  EXPECT_THROW(CirculantSpec::parse("8:3,1"), InvalidParameter);
  EXPECT_TRUE(kA.connected());
  EXPECT_FALSE((CirculantSpec{8, {2}}).connected());
}

TEST(EnumerateCirculants, Counts) {
  // Jumps range over 1..ceil(n/2)-1, so there are 2^k - 1 nonempty sets.
  EXPECT_EQ(enumerate_circulants(5).size(), 3u);
  EXPECT_EQ(enumerate_circulants(6).size(), 3u);
  EXPECT_EQ(enumerate_circulants(20).size(), 511u);
  EXPECT_EQ(enumerate_circulants(21).size(), 1023u);
  for (const auto& s : enumerate_circulants(12, true)) EXPECT_TRUE(s.connected());
  const auto all = enumerate_circulants(9);
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto& p = all[i - 1].jumps;
    const auto& q = all[i].jumps;
    EXPECT_TRUE(p.size() < q.size() || (p.size() == q.size() && p < q));
  }
}

TEST(Circulant, KnownPairIsCospectralButNotIsomorphic) {
  EXPECT_EQ(char_poly(laplacian(kA.graph())), char_poly(laplacian(kB.graph())));
  EXPECT_EQ(kA.spectrum(), kB.spectrum());
  const auto res = circulant_isomorphic(kA, kB);
  EXPECT_FALSE(res.isomorphic);
  EXPECT_EQ(res.certificate.kind, IsomorphismCertificate::Kind::Invariant);
  const auto search = circulant_isomorphic(kA, kB, true);
  EXPECT_FALSE(search.isomorphic);
  EXPECT_EQ(search.certificate.kind, IsomorphismCertificate::Kind::SearchExhausted);
}

TEST(Circulant, MultiplierEquivalentSpecsAreIsomorphicAndCospectral) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 7 + static_cast<int>(rng() % 14);
    const auto specs = enumerate_circulants(n);
    const auto& s = specs[rng() % specs.size()];
    int r = 0;
    do r = 1 + static_cast<int>(rng() % (n - 1));
    while (std::gcd(r, n) != 1);
    const CirculantSpec t = scaled(s, r);
    EXPECT_EQ(s.spectrum(), t.spectrum());
    EXPECT_TRUE(circulant_isomorphic(s, t).isomorphic);
    const auto search = circulant_isomorphic(s, t, true);
    ASSERT_TRUE(search.isomorphic);
    ASSERT_EQ(search.certificate.kind, IsomorphismCertificate::Kind::Bijection);
    EXPECT_TRUE(verify_bijection(s.graph(), t.graph(), search.certificate.bijection));
  }
}

TEST(Circulant, IsomorphismAgreesWithSearchOnSmallOrders) {
  for (int n = 5; n <= 12; ++n) {
    const auto specs = enumerate_circulants(n);
    for (std::size_t i = 0; i < specs.size(); ++i)
      for (std::size_t j = i; j < specs.size(); ++j) {
        if (specs[i].jumps.size() != specs[j].jumps.size()) continue;
        const bool fast = circulant_isomorphic(specs[i], specs[j]).isomorphic;
        const bool slow = circulant_isomorphic(specs[i], specs[j], true).isomorphic;
        EXPECT_EQ(fast, slow) << specs[i].to_string() << " " << specs[j].to_string();
      }
  }
}

TEST(Circulant, RejectsWrongBijections) {
  const auto g = kA.graph();
  std::vector<std::uint32_t> id(20);
  std::iota(id.begin(), id.end(), 0u);
  EXPECT_TRUE(verify_bijection(g, g, id));
  EXPECT_FALSE(verify_bijection(g, kB.graph(), id));
  std::swap(id[0], id[1]);
  EXPECT_FALSE(verify_bijection(g, g, id));
  EXPECT_FALSE(verify_bijection(g, g, std::vector<std::uint32_t>(20, 0)));
}

TEST(SearchCospectral, NoCounterexampleBelowTwenty) {
  const auto report = search_cospectral(3, 16, false, 2);
  EXPECT_EQ(report.non_isomorphic_pair_count(), 0u);
  for (const auto& c : report.classes)
    for (const auto& p : c.pairs) {
      EXPECT_TRUE(p.result.isomorphic);
      EXPECT_EQ(c.members[p.first].spectrum(), c.members[p.second].spectrum());
    }
}

TEST(SearchCospectral, DeterministicAcrossWorkerCounts) {
  const auto one = search_cospectral(10, 14, false, 1);
  const auto four = search_cospectral(10, 14, false, 4);
  EXPECT_EQ(report_to_json(one), report_to_json(four));
  EXPECT_THROW(search_cospectral(2, 5, false), InvalidParameter);
  EXPECT_THROW(search_cospectral(9, 5, false), InvalidParameter);
  EXPECT_THROW(search_cospectral(3, kMaxSearchOrder + 1, false), InvalidParameter);
}

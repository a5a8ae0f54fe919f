#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "torusear/graph.hpp"
#include "torusear/spectra.hpp"

namespace torusear {

/// C_n(s_1, ..., s_k) with 0 < s_1 < ... < s_k < n/2.
struct CirculantSpec {
  int n = 0;
  std::vector<int> jumps;

  /// Throws InvalidParameter unless the jump bounds hold.
  void validate() const;
  /// gcd(n, s_1, ..., s_k) == 1.
  bool connected() const;
  MultiGraph graph() const { return circulant_graph(n, jumps); }
  Spectrum spectrum() const { return circulant_spectrum(n, jumps); }
  /// "C20(2,3,4,7)".
  std::string to_string() const;
  /// Parses "20:2,3,4,7".
  static CirculantSpec parse(const std::string& text);

  friend bool operator==(const CirculantSpec&, const CirculantSpec&) = default;
  friend auto operator<=>(const CirculantSpec&, const CirculantSpec&) = default;
};

/// Every nonempty jump set for order n, by size and then lexicographically.
std::vector<CirculantSpec> enumerate_circulants(int n, bool connected_only = false);

struct IsomorphismCertificate {
  enum class Kind {
    Multiplier,      // r * {+-s_i} = {+-s'_j} mod n, gcd(r, n) = 1
    Bijection,       // explicit vertex map found by search
    Invariant,       // an isomorphism invariant differs
    SearchExhausted  // complete backtracking found no bijection
  };
  Kind kind = Kind::SearchExhausted;
  int multiplier = 0;
  std::vector<std::uint32_t> bijection;  // vertex v of a maps to bijection[v] of b
  std::string detail;

  std::string describe() const;
};

struct IsomorphismResult {
  bool isomorphic = false;
  IsomorphismCertificate certificate;
};

/// Decides isomorphism of two circulants of the same order.
///
/// Tries the multiplier test, then compares distance distributions, then
/// runs a complete backtracking search that fixes vertex 0 (both graphs are
/// vertex-transitive) and requires all pairwise distances to be preserved.
/// With `search_only` the first two stages are skipped, so the verdict rests
/// on the search alone.
IsomorphismResult circulant_isomorphic(const CirculantSpec& a, const CirculantSpec& b, bool search_only = false);

/// Checks that `cert.bijection` is an isomorphism from a to b.
bool verify_bijection(const MultiGraph& a, const MultiGraph& b, const std::vector<std::uint32_t>& bijection);

struct CospectralClass {
  struct PairVerdict {
    std::size_t first;   // indices into members
    std::size_t second;
    IsomorphismResult result;
  };
  int n = 0;
  std::string charpoly_hash;
  std::vector<CirculantSpec> members;
  std::vector<PairVerdict> pairs;

  bool has_non_isomorphic_pair() const;
};

struct SearchReport {
  int n_min = 0;
  int n_max = 0;
  bool connected_only = false;
  std::uint64_t total_specs = 0;
  std::vector<CospectralClass> classes;  // every group of >= 2 specs sharing a CharPoly
  double wall_seconds = 0.0;             // excluded from the JSON form

  std::size_t non_isomorphic_pair_count() const;
};

inline constexpr int kMaxSearchOrder = 24;

/// Groups the circulants of each order in [n_min, n_max] by exact CharPoly and
/// tests isomorphism within each group. For n <= 12 the grouping is
/// cross-checked against exact spectra; a mismatch throws std::logic_error.
SearchReport search_cospectral(int n_min, int n_max, bool connected_only, unsigned workers = 1);

}  // namespace torusear

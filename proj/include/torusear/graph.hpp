#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "torusear/dense_matrix.hpp"
#include "torusear/rational.hpp"

namespace torusear {

using IntegerMatrix = DenseMatrix<BigInt>;

/// Undirected loopless multigraph on vertices 0..n-1.
///
/// Adjacency is a sorted sparse symmetric multiplicity map; the value is
/// immutable once built.
class MultiGraph {
 public:
  struct Edge {
    std::uint32_t u;
    std::uint32_t v;
    std::uint32_t multiplicity;

    friend bool operator==(const Edge&, const Edge&) = default;
  };
  using Neighbor = std::pair<std::uint32_t, std::uint32_t>;  // (vertex, multiplicity)

  MultiGraph() = default;

  /// Edges may be listed in either orientation and repeated; multiplicities add.
  /// Self-loops, zero multiplicities and out-of-range vertices are rejected.
  MultiGraph(std::uint32_t vertex_count, std::span<const Edge> edges);

  std::uint32_t vertex_count() const { return n_; }
  std::span<const Neighbor> neighbors(std::uint32_t v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::uint32_t multiplicity(std::uint32_t u, std::uint32_t v) const;
  std::uint64_t degree(std::uint32_t v) const;

  /// Each edge once with u < v, sorted.
  std::vector<Edge> edges() const;
  /// Number of edges counted with multiplicity.
  std::uint64_t edge_count() const;

  /// True when every vertex has degree `d`.
  bool is_regular(std::uint64_t d) const;

  friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
    return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// L = D - A as an exact integer matrix.
IntegerMatrix laplacian(const MultiGraph& g);

/// C_m. For m = 2 the two vertices share a double edge, so every vertex has degree 2.
MultiGraph cycle_graph(int m);

/// Single edge K_2.
MultiGraph complete_graph_k2();

/// C_n(s_1, ..., s_k): i ~ i +- s_j (mod n). Requires 0 < s_1 < ... < s_k < n/2.
MultiGraph circulant_graph(int n, std::span<const int> jumps);

/// Vertex (u, v) is indexed u * |V(g2)| + v.
MultiGraph cartesian_product(const MultiGraph& g1, const MultiGraph& g2);

/// Left-associated product C_{m_1} x ... x C_{m_p}.
MultiGraph torus_graph(std::span<const int> dims);

bool is_connected(const MultiGraph& g);

/// Relabels vertices: vertex v of g becomes perm[v].
MultiGraph relabel(const MultiGraph& g, std::span<const std::uint32_t> perm);

}  // namespace torusear

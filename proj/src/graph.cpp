#include "torusear/graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "torusear/errors.hpp"

namespace torusear {

MultiGraph::MultiGraph(std::uint32_t vertex_count, std::span<const Edge> edges) : n_(vertex_count) {
  if (vertex_count == 0) throw InvalidParameter("MultiGraph: vertex count must be positive");
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> mult;
  for (const auto& e : edges) {
    if (e.u >= n_ || e.v >= n_)
      throw InvalidParameter("MultiGraph: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range");
    if (e.u == e.v) throw InvalidParameter("MultiGraph: self-loops are not supported");
    if (e.multiplicity == 0) throw InvalidParameter("MultiGraph: zero edge multiplicity");
    mult[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.multiplicity;
  }
  std::vector<std::vector<Neighbor>> adj(n_);
  for (const auto& [uv, m] : mult) {
    adj[uv.first].emplace_back(uv.second, static_cast<std::uint32_t>(m));
    adj[uv.second].emplace_back(uv.first, static_cast<std::uint32_t>(m));
  }
  offsets_.assign(n_ + 1, 0);
  for (std::uint32_t v = 0; v < n_; ++v) {
    std::sort(adj[v].begin(), adj[v].end());
    offsets_[v + 1] = offsets_[v] + static_cast<std::uint32_t>(adj[v].size());
  }
  adjacency_.reserve(offsets_.back());
  for (auto& list : adj) adjacency_.insert(adjacency_.end(), list.begin(), list.end());
}

std::uint32_t MultiGraph::multiplicity(std::uint32_t u, std::uint32_t v) const {
  const auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), Neighbor{v, 0});
  return (it != nb.end() && it->first == v) ? it->second : 0;
}

std::uint64_t MultiGraph::degree(std::uint32_t v) const {
  std::uint64_t d = 0;
  for (const auto& [w, m] : neighbors(v)) d += m;
  return d;
}

std::vector<MultiGraph::Edge> MultiGraph::edges() const {
  std::vector<Edge> out;
  for (std::uint32_t u = 0; u < n_; ++u)
    for (const auto& [v, m] : neighbors(u))
      if (u < v) out.push_back({u, v, m});
  return out;
}

std::uint64_t MultiGraph::edge_count() const {
  std::uint64_t total = 0;
  for (std::uint32_t v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

bool MultiGraph::is_regular(std::uint64_t d) const {
  for (std::uint32_t v = 0; v < n_; ++v)
    if (degree(v) != d) return false;
  return true;
}

IntegerMatrix laplacian(const MultiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  IntegerMatrix l(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    unsigned long deg = 0;
    for (const auto& [v, m] : g.neighbors(u)) {
      l(u, v) = -static_cast<long>(m);
      deg += m;
    }
    l(u, u) = deg;
  }
  return l;
}

MultiGraph cycle_graph(int m) {
  if (m < 2) throw InvalidParameter("cycle_graph: m must be >= 2, got " + std::to_string(m));
  std::vector<MultiGraph::Edge> edges;
  if (m == 2) {
    edges.push_back({0, 1, 2});
  } else {
    for (int i = 0; i < m; ++i)
      edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + 1) % m), 1});
  }
  return MultiGraph(static_cast<std::uint32_t>(m), edges);
}

MultiGraph complete_graph_k2() {
  const MultiGraph::Edge e{0, 1, 1};
  return MultiGraph(2, std::span(&e, 1));
}

MultiGraph circulant_graph(int n, std::span<const int> jumps) {
  if (n < 3) throw InvalidParameter("circulant_graph: n must be >= 3");
  if (jumps.empty()) throw InvalidParameter("circulant_graph: at least one jump required");
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (jumps[i] <= 0 || 2 * jumps[i] >= n)
      throw InvalidParameter("circulant_graph: jump " + std::to_string(jumps[i]) + " outside (0, n/2)");
    if (i > 0 && jumps[i] <= jumps[i - 1])
      throw InvalidParameter("circulant_graph: jumps must be strictly increasing");
  }
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int s : jumps)
      edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>((i + s) % n), 1});
  return MultiGraph(static_cast<std::uint32_t>(n), edges);
}

MultiGraph cartesian_product(const MultiGraph& g1, const MultiGraph& g2) {
  const std::uint32_t n1 = g1.vertex_count();
  const std::uint32_t n2 = g2.vertex_count();
  std::vector<MultiGraph::Edge> edges;
  for (std::uint32_t u = 0; u < n1; ++u)
    for (const auto& e : g2.edges()) edges.push_back({u * n2 + e.u, u * n2 + e.v, e.multiplicity});
  for (const auto& e : g1.edges())
    for (std::uint32_t v = 0; v < n2; ++v) edges.push_back({e.u * n2 + v, e.v * n2 + v, e.multiplicity});
  return MultiGraph(n1 * n2, edges);
}

MultiGraph torus_graph(std::span<const int> dims) {
  if (dims.empty()) throw InvalidParameter("torus_graph: empty shape");
  MultiGraph g = cycle_graph(dims[0]);
  for (std::size_t i = 1; i < dims.size(); ++i) g = cartesian_product(g, cycle_graph(dims[i]));
  return g;
}

bool is_connected(const MultiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::uint32_t count = 1;
  while (!stack.empty()) {
    const std::uint32_t v = stack.back();
    stack.pop_back();
    for (const auto& [w, m] : g.neighbors(v)) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++count;
      stack.push_back(w);
    }
  }
  return count == n;
}

MultiGraph relabel(const MultiGraph& g, std::span<const std::uint32_t> perm) {
  if (perm.size() != g.vertex_count()) throw InvalidParameter("relabel: permutation size mismatch");
  std::vector<MultiGraph::Edge> edges;
  for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.multiplicity});
  return MultiGraph(g.vertex_count(), edges);
}

}  // namespace torusear

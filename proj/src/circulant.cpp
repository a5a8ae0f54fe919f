#include "torusear/circulant.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "torusear/errors.hpp"
#include "torusear/parallel.hpp"

namespace torusear {

void CirculantSpec::validate() const {
  if (n < 3) throw InvalidParameter("circulant: n must be >= 3, got " + std::to_string(n));
  if (jumps.empty()) throw InvalidParameter("circulant: at least one jump required");
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    if (jumps[i] <= 0 || 2 * jumps[i] >= n)
      throw InvalidParameter("circulant: jump " + std::to_string(jumps[i]) + " outside (0, n/2) for n = " +
                             std::to_string(n));
    if (i > 0 && jumps[i] <= jumps[i - 1]) throw InvalidParameter("circulant: jumps must be strictly increasing");
  }
}

bool CirculantSpec::connected() const {
  int g = n;
  for (int s : jumps) g = std::gcd(g, s);
  return g == 1;
}

std::string CirculantSpec::to_string() const {
  std::string out = "C" + std::to_string(n) + "(";
  for (std::size_t i = 0; i < jumps.size(); ++i) out += (i ? "," : "") + std::to_string(jumps[i]);
  return out + ")";
}

CirculantSpec CirculantSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameter("circulant: expected N:S1,S2,... got '" + text + "'");
  CirculantSpec spec;
  try {
    std::size_t used = 0;
    spec.n = std::stoi(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("trailing");
    std::stringstream ss(text.substr(colon + 1));
    for (std::string item; std::getline(ss, item, ',');) {
      spec.jumps.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    }
  } catch (const std::logic_error&) {
    throw InvalidParameter("circulant: malformed spec '" + text + "'");
  }
  spec.validate();
  return spec;
}

std::vector<CirculantSpec> enumerate_circulants(int n, bool connected_only) {
  if (n < 3) throw InvalidParameter("enumerate_circulants: n must be >= 3");
  const int top = (n + 1) / 2 - 1;  // largest s with s < n/2
  std::vector<CirculantSpec> out;
  for (int size = 1; size <= top; ++size) {
    std::vector<int> pick(size);
    std::iota(pick.begin(), pick.end(), 1);
    while (true) {
      CirculantSpec spec{n, pick};
      if (!connected_only || spec.connected()) out.push_back(std::move(spec));
      int i = size - 1;
      while (i >= 0 && pick[i] == top - (size - 1 - i)) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return out;
}

std::string IsomorphismCertificate::describe() const {
  switch (kind) {
    case Kind::Multiplier:
      return "multiplier " + std::to_string(multiplier);
    case Kind::Bijection: {
      std::string s = "bijection [";
      for (std::size_t i = 0; i < bijection.size(); ++i) s += (i ? "," : "") + std::to_string(bijection[i]);
      return s + "]";
    }
    case Kind::Invariant:
      return "invariant: " + detail;
    case Kind::SearchExhausted:
      return "exhaustive search: " + detail;
  }
  return detail;
}

namespace {

std::vector<int> connection_set(const CirculantSpec& spec) {
  std::vector<int> s;
  for (int x : spec.jumps) {
    s.push_back(x);
    s.push_back(spec.n - x);
  }
  std::sort(s.begin(), s.end());
  return s;
}

using DistanceMatrix = std::vector<std::vector<int>>;

DistanceMatrix all_distances(const MultiGraph& g) {
  const std::uint32_t n = g.vertex_count();
  DistanceMatrix d(n, std::vector<int>(n, -1));
  for (std::uint32_t src = 0; src < n; ++src) {
    std::vector<std::uint32_t> queue{src};
    d[src][src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t v = queue[head];
      for (const auto& [w, m] : g.neighbors(v))
        if (d[src][w] < 0) {
          d[src][w] = d[src][v] + 1;
          queue.push_back(w);
        }
    }
  }
  return d;
}

// Distance from 0 and common-neighbour count with 0, for every vertex, sorted.
std::vector<std::pair<int, int>> profile_at_zero(const MultiGraph& g, const DistanceMatrix& d) {
  const std::uint32_t n = g.vertex_count();
  std::vector<char> near0(n, 0);
  for (const auto& [w, m] : g.neighbors(0)) near0[w] = 1;
  std::vector<std::pair<int, int>> out;
  for (std::uint32_t v = 0; v < n; ++v) {
    int common = 0;
    for (const auto& [w, m] : g.neighbors(v)) common += near0[w];
    out.emplace_back(d[0][v], common);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class DistanceSearch {
 public:
  DistanceSearch(const DistanceMatrix& da, const DistanceMatrix& db) : da_(da), db_(db), n_(da.size()) {
    // Assign vertices of a in order of distance from 0; other components (-1) go last.
    for (std::size_t v = 0; v < n_; ++v) order_.push_back(static_cast<std::uint32_t>(v));
    const auto key = [&](std::uint32_t x) { return static_cast<unsigned>(da_[0][x]); };
    std::stable_sort(order_.begin(), order_.end(), [&](std::uint32_t x, std::uint32_t y) { return key(x) < key(y); });
    map_.assign(n_, kUnset);
    used_.assign(n_, 0);
  }

  bool run() {
    map_[0] = 0;
    used_[0] = 1;
    return extend(1);
  }

  const std::vector<std::uint32_t>& mapping() const { return map_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  static constexpr std::uint32_t kUnset = ~0u;

  bool extend(std::size_t depth) {
    if (depth == n_) return true;
    const std::uint32_t u = order_[depth];
    for (std::uint32_t v = 0; v < n_; ++v) {
      if (used_[v]) continue;
      ++nodes_;
      bool ok = true;
      for (std::size_t k = 0; k < depth && ok; ++k) {
        const std::uint32_t w = order_[k];
        ok = da_[u][w] == db_[v][map_[w]];
      }
      if (!ok) continue;
      map_[u] = v;
      used_[v] = 1;
      if (extend(depth + 1)) return true;
      used_[v] = 0;
      map_[u] = kUnset;
    }
    return false;
  }

  const DistanceMatrix& da_;
  const DistanceMatrix& db_;
  std::size_t n_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> map_;
  std::vector<char> used_;
  std::uint64_t nodes_ = 0;
};

struct CoeffLess {
  bool operator()(const std::vector<BigInt>& x, const std::vector<BigInt>& y) const {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [](const BigInt& p, const BigInt& q) { return cmp(p, q) < 0; });
  }
};

}  // namespace

bool verify_bijection(const MultiGraph& a, const MultiGraph& b, const std::vector<std::uint32_t>& bijection) {
  if (a.vertex_count() != b.vertex_count() || bijection.size() != a.vertex_count()) return false;
  std::vector<char> hit(bijection.size(), 0);
  for (auto v : bijection) {
    if (v >= hit.size() || hit[v]) return false;
    hit[v] = 1;
  }
  return relabel(a, bijection) == b;
}

IsomorphismResult circulant_isomorphic(const CirculantSpec& a, const CirculantSpec& b, bool search_only) {
  a.validate();
  b.validate();
  if (a.n != b.n) throw InvalidParameter("circulant_isomorphic: orders differ");
  const int n = a.n;
  IsomorphismResult result;

  const auto sa = connection_set(a);
  const auto sb = connection_set(b);
  for (int r = 1; r < n && !search_only; ++r) {
    if (std::gcd(r, n) != 1) continue;
    std::vector<int> image;
    for (int x : sa) image.push_back(static_cast<int>(static_cast<long>(r) * x % n));
    std::sort(image.begin(), image.end());
    if (image == sb) {
      result.isomorphic = true;
      result.certificate.kind = IsomorphismCertificate::Kind::Multiplier;
      result.certificate.multiplier = r;
      return result;
    }
  }

  const MultiGraph ga = a.graph();
  const MultiGraph gb = b.graph();
  if (sa.size() != sb.size() && !search_only) {
    result.certificate.kind = IsomorphismCertificate::Kind::Invariant;
    result.certificate.detail = "degrees " + std::to_string(sa.size()) + " and " + std::to_string(sb.size());
    return result;
  }
  const DistanceMatrix da = all_distances(ga);
  const DistanceMatrix db = all_distances(gb);
  const auto pa = profile_at_zero(ga, da);
  const auto pb = profile_at_zero(gb, db);
  if (pa != pb && !search_only) {
    std::map<std::pair<int, int>, std::pair<int, int>> counts;
    for (const auto& key : pa) ++counts[key].first;
    for (const auto& key : pb) ++counts[key].second;
    for (const auto& [key, c] : counts) {
      if (c.first == c.second) continue;
      result.certificate.kind = IsomorphismCertificate::Kind::Invariant;
      result.certificate.detail = "vertices at distance " + std::to_string(key.first) + " from 0 with " +
                                  std::to_string(key.second) + " common neighbours: " + std::to_string(c.first) +
                                  " vs " + std::to_string(c.second);
      return result;
    }
  }

  DistanceSearch search(da, db);
  if (search.run()) {
    if (!verify_bijection(ga, gb, search.mapping()))
      throw std::logic_error("circulant_isomorphic: search produced an invalid bijection");
    result.isomorphic = true;
    result.certificate.kind = IsomorphismCertificate::Kind::Bijection;
    result.certificate.bijection = search.mapping();
    return result;
  }
  result.certificate.kind = IsomorphismCertificate::Kind::SearchExhausted;
  result.certificate.detail = "no distance-preserving bijection fixing vertex 0 (" + std::to_string(search.nodes()) +
                              " nodes)";
  return result;
}

bool CospectralClass::has_non_isomorphic_pair() const {
  return std::any_of(pairs.begin(), pairs.end(), [](const PairVerdict& p) { return !p.result.isomorphic; });
}

std::size_t SearchReport::non_isomorphic_pair_count() const {
  std::size_t total = 0;
  for (const auto& c : classes)
    for (const auto& p : c.pairs) total += p.result.isomorphic ? 0 : 1;
  return total;
}

SearchReport search_cospectral(int n_min, int n_max, bool connected_only, unsigned workers) {
  if (n_min < 3 || n_min > n_max || n_max > kMaxSearchOrder)
    throw InvalidParameter("search_cospectral: need 3 <= n_min <= n_max <= " + std::to_string(kMaxSearchOrder));
  const auto started = std::chrono::steady_clock::now();
  SearchReport report;
  report.n_min = n_min;
  report.n_max = n_max;
  report.connected_only = connected_only;

  for (int n = n_min; n <= n_max; ++n) {
    const auto specs = enumerate_circulants(n, connected_only);
    report.total_specs += specs.size();
    const auto polys =
        parallel_map(specs.size(), workers, [&](std::size_t i) { return char_poly(laplacian(specs[i].graph())); });

    std::map<std::vector<BigInt>, std::vector<std::size_t>, CoeffLess> groups;
    for (std::size_t i = 0; i < specs.size(); ++i) groups[polys[i].coeffs].push_back(i);

    if (n <= 12) {
      const auto spectra = parallel_map(specs.size(), workers, [&](std::size_t i) { return specs[i].spectrum(); });
      for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j)
          if ((polys[i] == polys[j]) != (spectra[i] == spectra[j]))
            throw std::logic_error("search_cospectral: CharPoly and exact spectrum disagree for " +
                                   specs[i].to_string() + " and " + specs[j].to_string());
    }

    std::vector<CospectralClass> found;
    for (const auto& [coeffs, members] : groups) {
      if (members.size() < 2) continue;
      CospectralClass cls;
      cls.n = n;
      cls.charpoly_hash = polys[members.front()].hash_hex();
      for (auto i : members) cls.members.push_back(specs[i]);
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) cls.pairs.push_back({x, y, {}});
      found.push_back(std::move(cls));
    }
    // Isomorphism tests are independent; flatten them for the worker pool.
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t c = 0; c < found.size(); ++c)
      for (std::size_t p = 0; p < found[c].pairs.size(); ++p) jobs.emplace_back(c, p);
    const auto verdicts = parallel_map(jobs.size(), workers, [&](std::size_t j) {
      const auto& cls = found[jobs[j].first];
      const auto& pair = cls.pairs[jobs[j].second];
      return circulant_isomorphic(cls.members[pair.first], cls.members[pair.second]);
    });
    for (std::size_t j = 0; j < jobs.size(); ++j) found[jobs[j].first].pairs[jobs[j].second].result = verdicts[j];

    std::sort(found.begin(), found.end(),
              [](const CospectralClass& x, const CospectralClass& y) { return x.members < y.members; });
    for (auto& c : found) report.classes.push_back(std::move(c));
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace torusear

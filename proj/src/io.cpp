#include "torusear/io.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "torusear/errors.hpp"

namespace torusear {
namespace {

const Json& require(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw InvalidParameter(std::string(where) + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::uint64_t positive_count(const Json& j, const char* where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1)
    throw InvalidParameter(std::string(where) + ": multiplicity must be a positive integer");
  return j.get<std::uint64_t>();
}

CycloReal read_value(const Json& entry, const char* exact_key, const char* decimal_key, const char* where) {
  if (entry.contains(exact_key)) {
    const Json& v = entry.at(exact_key);
    if (!v.is_string()) throw InvalidParameter(std::string(where) + ": " + exact_key + " must be a string");
    return CycloReal::parse(v.get<std::string>());
  }
  const Json& v = require(entry, decimal_key, where);
  if (v.is_string()) return CycloReal(Rational::parse(v.get<std::string>()));
  if (v.is_number_integer()) return CycloReal(Rational(v.get<std::int64_t>()));
  throw InvalidParameter(std::string(where) + ": " + decimal_key + " must be a string");
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

Json graph_to_json(const MultiGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.multiplicity});
  return {{"n", g.vertex_count()}, {"edges", edges}};
}

MultiGraph graph_from_json(const Json& j) {
  const Json& n_json = require(j, "n", "graph");
  if (!n_json.is_number_integer() || n_json.get<std::int64_t>() < 1)
    throw InvalidParameter("graph: n must be a positive integer");
  const auto n = n_json.get<std::int64_t>();
  const Json& edges_json = require(j, "edges", "graph");
  if (!edges_json.is_array()) throw InvalidParameter("graph: edges must be an array");
  std::vector<MultiGraph::Edge> edges;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& e : edges_json) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number_integer())
      throw InvalidParameter("graph: each edge must be [u, v, multiplicity]");
    const auto u = e[0].get<std::int64_t>();
    const auto v = e[1].get<std::int64_t>();
    const auto m = e[2].get<std::int64_t>();
    if (u < 0 || v >= n) throw InvalidParameter("graph: edge index out of range");
    if (u >= v) throw InvalidParameter("graph: edges must be listed once with u < v");
    if (m < 1) throw InvalidParameter("graph: multiplicity must be positive");
    if (!seen.insert({u, v}).second) throw InvalidParameter("graph: edge listed twice");
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(m)});
  }
  return MultiGraph(static_cast<std::uint32_t>(n), edges);
}

Json spectrum_to_json(const Spectrum& s, int digits) {
  Json entries = Json::array();
  for (const auto& e : s.entries())
    entries.push_back(
        {{"value_decimal", to_decimal(e.value, digits)}, {"value_exact", e.value.to_string()}, {"mult", e.mult}});
  return {{"entries", entries}};
}

Spectrum spectrum_from_json(const Json& j) {
  const Json& entries = require(j, "entries", "spectrum");
  if (!entries.is_array()) throw InvalidParameter("spectrum: entries must be an array");
  std::vector<Spectrum::Entry> out;
  for (const auto& e : entries)
    out.push_back({read_value(e, "value_exact", "value_decimal", "spectrum"),
                   positive_count(require(e, "mult", "spectrum"), "spectrum")});
  return Spectrum::from_entries(std::move(out));
}

Json charpoly_to_json(const CharPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(c.get_str());
  return {{"coeffs", coeffs}};
}

CharPoly charpoly_from_json(const Json& j) {
  const Json& coeffs = require(j, "coeffs", "charpoly");
  if (!coeffs.is_array()) throw InvalidParameter("charpoly: coeffs must be an array");
  CharPoly p;
  for (const auto& c : coeffs) {
    if (!c.is_string()) throw InvalidParameter("charpoly: coefficients must be decimal strings");
    BigInt v;
    if (v.set_str(c.get<std::string>(), 10) != 0) throw InvalidParameter("charpoly: bad integer");
    p.coeffs.push_back(v);
  }
  return p;
}

Json theta_to_json(const ThetaFunction& f, int digits) {
  Json entries = Json::array();
  for (const auto& t : f.terms())
    entries.push_back({{"exponent_decimal", to_decimal(t.exponent, digits)},
                       {"exponent_exact", t.exponent.to_string()},
                       {"mult", t.mult}});
  return {{"entries", entries}};
}

ThetaFunction theta_from_json(const Json& j) {
  const Json& entries = require(j, "entries", "theta");
  if (!entries.is_array()) throw InvalidParameter("theta: entries must be an array");
  std::vector<ThetaFunction::Term> out;
  for (const auto& e : entries)
    out.push_back({read_value(e, "exponent_exact", "exponent_decimal", "theta"),
                   positive_count(require(e, "mult", "theta"), "theta")});
  return ThetaFunction(std::move(out));
}

Json shape_to_json(const TorusShape& s) { return {{"shape", s.dims}}; }

TorusShape shape_from_json(const Json& j) {
  const Json& dims = require(j, "shape", "shape");
  if (!dims.is_array()) throw InvalidParameter("shape: must be an array");
  std::vector<int> v;
  for (const auto& d : dims) {
    if (!d.is_number_integer()) throw InvalidParameter("shape: factors must be integers");
    v.push_back(d.get<int>());
  }
  return canonical_shape(v);
}

Json not_a_torus_to_json(const std::vector<int>& partial, const std::string& message) {
  return {{"error", "not_a_torus_spectrum"}, {"partial", partial}, {"message", message}};
}

Json report_to_json(const SearchReport& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) {
    Json members = Json::array();
    for (const auto& m : c.members) members.push_back(m.to_string());
    Json pairs = Json::array();
    for (const auto& p : c.pairs)
      pairs.push_back({{"a", c.members[p.first].to_string()},
                       {"b", c.members[p.second].to_string()},
                       {"isomorphic", p.result.isomorphic},
                       {"certificate", p.result.certificate.describe()}});
    classes.push_back({{"n", c.n}, {"charpoly_hash", c.charpoly_hash}, {"members", members}, {"pairs", pairs}});
  }
  return {{"n_min", r.n_min},
          {"n_max", r.n_max},
          {"connected_only", r.connected_only},
          {"total_specs", r.total_specs},
          {"cospectral_classes", classes},
          {"non_isomorphic_pairs", r.non_isomorphic_pair_count()}};
}

std::string spectrum_table(const Spectrum& s, int digits) {
  std::ostringstream out;
  out << pad("value", digits + 8) << pad("mult", 8) << "exact\n";
  for (const auto& e : s.entries())
    out << pad(to_decimal(e.value, digits), digits + 8) << pad(std::to_string(e.mult), 8) << e.value.to_string()
        << "\n";
  out << "total " << s.total_count() << "\n";
  return out.str();
}

std::string theta_table(const ThetaFunction& f, int digits) {
  std::ostringstream out;
  out << pad("exponent", digits + 8) << pad("mult", 8) << "exact\n";
  for (const auto& t : f.terms())
    out << pad(to_decimal(t.exponent, digits), digits + 8) << pad(std::to_string(t.mult), 8)
        << t.exponent.to_string() << "\n";
  return out.str();
}

std::string report_table(const SearchReport& r) {
  std::ostringstream out;
  out << "n " << r.n_min << ".." << r.n_max << (r.connected_only ? " (connected only)" : "") << ", "
      << r.total_specs << " circulants\n";
  for (const auto& c : r.classes) {
    out << "n=" << c.n << " charpoly " << c.charpoly_hash << ":";
    for (const auto& m : c.members) out << " " << m.to_string();
    out << "\n";
    for (const auto& p : c.pairs)
      out << "  " << c.members[p.first].to_string() << " vs " << c.members[p.second].to_string() << ": "
          << (p.result.isomorphic ? "isomorphic" : "NOT isomorphic") << " (" << p.result.certificate.describe()
          << ")\n";
  }
  const auto bad = r.non_isomorphic_pair_count();
  if (bad == 0)
    out << "no cospectral non-isomorphic pairs\n";
  else
    out << bad << " cospectral non-isomorphic pair(s)\n";
  out << std::fixed << std::setprecision(2) << "wall time " << r.wall_seconds << " s\n";
  return out.str();
}

}  // namespace torusear

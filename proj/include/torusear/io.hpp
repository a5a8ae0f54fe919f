#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "torusear/circulant.hpp"
#include "torusear/hearing.hpp"
#include "torusear/spectra.hpp"
#include "torusear/theta.hpp"

namespace torusear {

using Json = nlohmann::json;

// Readers throw InvalidParameter on any schema violation.

Json graph_to_json(const MultiGraph& g);
/// {"n": int, "edges": [[u, v, mult], ...]} with u < v, each pair once.
MultiGraph graph_from_json(const Json& j);

Json spectrum_to_json(const Spectrum& s, int digits = 12);
/// Uses value_exact when present, otherwise reads value_decimal as an exact rational.
Spectrum spectrum_from_json(const Json& j);

Json charpoly_to_json(const CharPoly& p);
CharPoly charpoly_from_json(const Json& j);

Json theta_to_json(const ThetaFunction& f, int digits = 12);
ThetaFunction theta_from_json(const Json& j);

Json shape_to_json(const TorusShape& s);
TorusShape shape_from_json(const Json& j);

Json not_a_torus_to_json(const std::vector<int>& partial, const std::string& message);

/// Deterministic: wall time is left out.
Json report_to_json(const SearchReport& r);

std::string spectrum_table(const Spectrum& s, int digits = 12);
std::string theta_table(const ThetaFunction& f, int digits = 12);
std::string report_table(const SearchReport& r);

}  // namespace torusear

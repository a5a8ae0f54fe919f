// torusear: exact Laplacian spectra of tori and circulants, and torus hearing.
//
// Exit status: 0 affirmative, 1 negative verdict, 2 usage or input error,
// 3 internal failure (precision cap, non-convergence).

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "torusear/circulant.hpp"
#include "torusear/errors.hpp"
#include "torusear/hearing.hpp"
#include "torusear/io.hpp"
#include "torusear/spectra.hpp"
#include "torusear/theta.hpp"

namespace {

using namespace torusear;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct Operand {
  enum class Kind { Torus, Circulant, Graph } kind;
  std::string text;
};

struct Options {
  std::string format = "json";
  unsigned precision = 4096;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<Operand> operands;
  std::string input = "-";
  std::string n_range = "3..19";
  bool connected_only = false;
  std::string divide;
  bool recover = false;
  int degree_bound = 64;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw InvalidParameter("not an integer list: '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidParameter("empty integer list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int n = parse_int_list(text).at(0);
    return {n, n};
  }
  return {parse_int_list(text.substr(0, dots)).at(0), parse_int_list(text.substr(dots + 2)).at(0)};
}

Json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidParameter(std::string("malformed JSON: ") + e.what());
  }
}

MultiGraph operand_graph(const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::Torus:
      return torus_graph(canonical_shape(parse_int_list(op.text)).dims);
    case Operand::Kind::Circulant:
      return CirculantSpec::parse(op.text).graph();
    case Operand::Kind::Graph:
      return graph_from_json(read_json(op.text));
  }
  throw InvalidParameter("unknown operand");
}

Spectrum operand_spectrum(const Operand& op) {
  if (op.kind == Operand::Kind::Torus) return torus_spectrum(canonical_shape(parse_int_list(op.text)).dims);
  if (op.kind == Operand::Kind::Circulant) {
    const auto spec = CirculantSpec::parse(op.text);
    return circulant_spectrum(spec.n, spec.jumps);
  }
  throw InvalidParameter("an exact spectrum needs --torus or --circulant");
}

void emit(const Options& o, const Json& j, const std::string& table) {
  if (o.format == "table")
    std::cout << table;
  else
    std::cout << j.dump(2) << "\n";
}

std::string format_double(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

int cmd_spectrum(const Options& o) {
  if (o.operands.size() != 1) throw InvalidParameter("spectrum takes exactly one of --torus, --circulant, --graph");
  const Operand& op = o.operands.front();
  if (op.kind != Operand::Kind::Graph) {
    const Spectrum s = operand_spectrum(op);
    emit(o, spectrum_to_json(s), spectrum_table(s));
    return kOk;
  }
  // Arbitrary graphs go through the numeric solver; values within 1e-9 are merged.
  const std::vector<double> values = numeric_spectrum(laplacian(operand_graph(op)));
  std::vector<std::pair<double, std::uint64_t>> merged;
  for (double v : values) {
    if (!merged.empty() && std::abs(v - merged.back().first) <= 1e-9)
      ++merged.back().second;
    else
      merged.emplace_back(v, 1);
  }
  Json entries = Json::array();
  std::string table = "value               mult\n";
  for (const auto& [v, m] : merged) {
    const std::string d = format_double(std::abs(v) < 1e-12 ? 0.0 : v);
    entries.push_back({{"value_decimal", d}, {"mult", m}});
    table += d + std::string(d.size() < 20 ? 20 - d.size() : 1, ' ') + std::to_string(m) + "\n";
  }
  emit(o, Json{{"entries", entries}, {"numeric", true}}, table);
  return kOk;
}

int cmd_hear(const Options& o) {
  const Spectrum s = spectrum_from_json(read_json(o.input));
  try {
    const TorusShape shape = hear_torus(s);
    std::string table = "shape";
    for (int m : shape.dims) table += " " + std::to_string(m);
    emit(o, shape_to_json(shape), table + "\n");
    return kOk;
  } catch (const NotATorusSpectrum& e) {
    std::string table = std::string("not a torus spectrum: ") + e.what() + "\npartial";
    for (int m : e.partial()) table += " " + std::to_string(m);
    emit(o, not_a_torus_to_json(e.partial(), e.what()), table + "\n");
    return kNegative;
  }
}

int cmd_isospectral(const Options& o) {
  if (o.operands.size() != 2) throw InvalidParameter("isospectral needs exactly two operands");
  bool same = false;
  const bool exact = o.operands[0].kind != Operand::Kind::Graph && o.operands[1].kind != Operand::Kind::Graph;
  if (exact)
    same = isospectral(operand_spectrum(o.operands[0]), operand_spectrum(o.operands[1]));
  else
    same = isospectral(laplacian(operand_graph(o.operands[0])), laplacian(operand_graph(o.operands[1])));
  emit(o, Json{{"isospectral", same}, {"method", exact ? "exact spectrum" : "characteristic polynomial"}},
       same ? "true\n" : "false\n");
  return same ? kOk : kNegative;
}

int cmd_theta(const Options& o) {
  if (o.operands.size() != 1) throw InvalidParameter("theta takes exactly one of --torus, --circulant");
  ThetaFunction f = theta_from_spectrum(operand_spectrum(o.operands.front()));
  if (!o.divide.empty()) {
    const auto divisor = theta_from_spectrum(torus_spectrum(canonical_shape(parse_int_list(o.divide)).dims));
    try {
      f = theta_divide(f, divisor);
    } catch (const NotAProduct& e) {
      emit(o, Json{{"error", "not_a_product"}, {"message", e.what()}}, std::string(e.what()) + "\n");
      return kNegative;
    }
  }
  Json out = theta_to_json(f);
  std::string table = theta_table(f);
  if (o.recover) {
    RecoveryOptions ro;
    ro.start_bits = std::min<mpfr_prec_t>(o.precision, 256);
    const auto terms = spectrum_from_theta_samples(make_theta_sampler(f), o.degree_bound, ro);
    Json rec = Json::array();
    table += "recovered from samples:\n";
    for (const auto& t : terms) {
      rec.push_back({{"exponent", t.exponent}, {"error_bound", t.error_bound}, {"mult", t.mult}});
      table += format_double(t.exponent) + "  x" + std::to_string(t.mult) + "\n";
    }
    out["recovered"] = rec;
  }
  emit(o, out, table);
  return kOk;
}

int cmd_search(const Options& o) {
  const auto [lo, hi] = parse_range(o.n_range);
  const SearchReport r = search_cospectral(lo, hi, o.connected_only, o.workers);
  emit(o, report_to_json(r), report_table(r));
  // Regression tripwire: no cospectral non-isomorphic pair may exist below 20.
  for (const auto& c : r.classes)
    if (c.n < 20 && c.has_non_isomorphic_pair()) return kNegative;
  return kOk;
}

int cmd_verify_counterexample(const Options& o) {
  const CirculantSpec a{20, {2, 3, 4, 7}};
  const CirculantSpec b{20, {3, 6, 7, 8}};
  const CharPoly pa = char_poly(laplacian(a.graph()));
  const CharPoly pb = char_poly(laplacian(b.graph()));
  const IsomorphismResult iso = circulant_isomorphic(a, b);
  const bool pass = pa == pb && !iso.isomorphic;
  const Json j{{"a", a.to_string()},
               {"b", b.to_string()},
               {"charpoly_equal", pa == pb},
               {"charpoly_hash", pa.hash_hex()},
               {"charpoly", charpoly_to_json(pa)},
               {"isomorphic", iso.isomorphic},
               {"certificate", iso.certificate.describe()},
               {"verified", pass}};
  std::ostringstream t;
  t << a.to_string() << " vs " << b.to_string() << "\n"
    << "charpoly equal: " << (pa == pb ? "yes" : "no") << " (hash " << pa.hash_hex() << ")\n"
    << "isomorphic: " << (iso.isomorphic ? "yes" : "no") << " (" << iso.certificate.describe() << ")\n"
    << (pass ? "verified\n" : "NOT verified\n");
  emit(o, j, t.str());
  return pass ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Laplacian spectra of discrete tori and circulant graphs"};
  app.require_subcommand(1, 1);
  Options o;
  if (const char* env = std::getenv("TORUSEAR_PRECISION")) {
    try {
      o.precision = static_cast<unsigned>(std::stoul(env));
    } catch (const std::logic_error&) {
      std::cerr << "TORUSEAR_PRECISION must be an integer\n";
      return kUsage;
    }
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--precision", o.precision, "Precision cap in bits for exact comparisons (>= 53)");
    sub->add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto add_operands = [&](CLI::App* sub, bool graphs) {
    sub->add_option_function<std::vector<std::string>>(
           "--torus", [&](const std::vector<std::string>& v) {
             for (const auto& s : v) o.operands.push_back({Operand::Kind::Torus, s});
           },
           "Torus shape, e.g. 2,3,5")
        ->allow_extra_args(false);
    sub->add_option_function<std::vector<std::string>>(
           "--circulant", [&](const std::vector<std::string>& v) {
             for (const auto& s : v) o.operands.push_back({Operand::Kind::Circulant, s});
           },
           "Circulant N:S1,S2,..., e.g. 20:2,3,4,7")
        ->allow_extra_args(false);
    if (graphs)
      sub->add_option_function<std::vector<std::string>>(
             "--graph", [&](const std::vector<std::string>& v) {
               for (const auto& s : v) o.operands.push_back({Operand::Kind::Graph, s});
             },
             "Graph JSON file")
          ->allow_extra_args(false);
  };

  auto* spectrum = app.add_subcommand("spectrum", "Print the Laplacian spectrum");
  add_common(spectrum);
  add_operands(spectrum, true);

  auto* hear = app.add_subcommand("hear", "Recover a torus shape from a spectrum JSON");
  add_common(hear);
  hear->add_option("input", o.input, "Spectrum JSON file, '-' for stdin");

  auto* iso = app.add_subcommand("isospectral", "Compare two spectra exactly");
  add_common(iso);
  add_operands(iso, true);

  auto* theta = app.add_subcommand("theta", "Theta function of a torus or circulant");
  add_common(theta);
  add_operands(theta, false);
  theta->add_option("--divide", o.divide, "Divide by the theta function of this torus shape");
  theta->add_flag("--recover", o.recover, "Recover the terms numerically from samples");
  theta->add_option("--degree-bound", o.degree_bound, "Term limit for --recover")->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Search circulants for cospectral non-isomorphic pairs");
  add_common(search);
  search->add_option("--n", o.n_range, "Order range A..B");
  search->add_flag("--connected-only", o.connected_only, "Skip disconnected circulants");

  auto* verify = app.add_subcommand("verify-counterexample", "Check C20(2,3,4,7) against C20(3,6,7,8)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  if (o.precision < 53) {
    std::cerr << "error: precision must be >= 53 bits\n";
    return kUsage;
  }
  set_max_cmp_precision(o.precision);

  try {
    if (*spectrum) return cmd_spectrum(o);
    if (*hear) return cmd_hear(o);
    if (*iso) return cmd_isospectral(o);
    if (*theta) return cmd_theta(o);
    if (*search) return cmd_search(o);
    if (*verify) return cmd_verify_counterexample(o);
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n" << app.get_subcommands().front()->help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

#pragma once

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "einfib/catalog.hpp"
#include "einfib/checks.hpp"
#include "einfib/einstein.hpp"

namespace einfib {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical JSON text: sorted keys, two-space indent, 17 significant digits.

namespace detail {

inline void write_string(std::string& out, const std::string& s) { out += Json(s).dump(); }

inline void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  if (v == 0.0) v = 0.0;  // no -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string t = buf;
  if (t.find_first_of(".eEn") == std::string::npos) t += ".0";
  out += t;
}

inline void write(std::string& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        write_string(out, it.key());
        out += ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured()) flat = false;
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(out, j[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: write_number(out, j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string canonical_dump(const Json& j) {
  std::string out;
  detail::write(out, j, 0);
  out += "\n";
  return out;
}

inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(const std::string& bytes) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(bytes));
  return std::string("fnv1a64:") + buf;
}

inline Json maybe(const MaybeScalar& v) { return v ? Json(*v) : Json(nullptr); }

template <class T>
Json maybe_nested(const std::vector<T>& v) {
  Json out = Json::array();
  for (const auto& e : v) {
    if constexpr (std::is_same_v<T, MaybeScalar>)
      out.push_back(maybe(e));
    else
      out.push_back(maybe_nested(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Report

struct SolutionRecord {
  std::vector<double> lambda, mu;
  double einstein_constant = 0.0;
  double defect = 0.0;
  std::string kind;
  std::vector<std::string> routes;
  std::optional<double> x;  // mu / lambda for standard and binormal metrics

  bool operator==(const SolutionRecord&) const = default;
};

struct EinsteinReport {
  std::string command;
  std::string name;
  std::string version = kVersion;
  std::string input_hash;
  std::uint64_t seed = kDefaultSeed;
  Tolerances tolerances;
  Json setup = Json::object();
  Json hypothesis = Json::object();
  Json constants = Json::object();
  Json necessary_conditions = Json::object();
  Json invariants = Json::object();
  Json extras = Json::object();
  std::vector<SolutionRecord> solutions;
  std::map<std::string, std::string> completeness;  // route -> tag
  std::vector<std::string> notes;
};

inline Json to_json(const SolutionRecord& s) {
  return Json{{"lambda", s.lambda}, {"mu", s.mu}, {"einstein_constant", s.einstein_constant}, {"defect", s.defect}, {"kind", s.kind}, {"routes", s.routes},
              {"x", s.x ? Json(*s.x) : Json(nullptr)}};
}

inline SolutionRecord solution_from_json(const Json& j) {
  SolutionRecord s;
  s.lambda = j.at("lambda").get<std::vector<double>>();
  s.mu = j.at("mu").get<std::vector<double>>();
  s.einstein_constant = j.at("einstein_constant").get<double>();
  s.defect = j.at("defect").get<double>();
  s.kind = j.at("kind").get<std::string>();
  s.routes = j.at("routes").get<std::vector<std::string>>();
  if (!j.at("x").is_null()) s.x = j.at("x").get<double>();
  return s;
}

inline Json to_json(const EinsteinReport& r) {
  Json sols = Json::array();
  for (const auto& s : r.solutions) sols.push_back(to_json(s));
  return Json{{"command", r.command},
              {"name", r.name},
              {"provenance", {{"tool", "einfib"}, {"version", r.version}, {"input_hash", r.input_hash}, {"seed", r.seed}}},
              {"tolerances", {{"epsilon", r.tolerances.epsilon}, {"einstein_defect", r.tolerances.einstein_defect}, {"dedup", r.tolerances.dedup}}},
              {"setup", r.setup},
              {"hypothesis", r.hypothesis},
              {"constants", r.constants},
              {"necessary_conditions", r.necessary_conditions},
              {"invariants", r.invariants},
              {"extras", r.extras},
              {"solutions", sols},
              {"completeness", r.completeness},
              {"notes", r.notes}};
}

inline EinsteinReport report_from_json(const Json& j) {
  EinsteinReport r;
  r.command = j.at("command").get<std::string>();
  r.name = j.at("name").get<std::string>();
  const Json& p = j.at("provenance");
  r.version = p.at("version").get<std::string>();
  r.input_hash = p.at("input_hash").get<std::string>();
  r.seed = p.at("seed").get<std::uint64_t>();
  const Json& t = j.at("tolerances");
  r.tolerances.epsilon = t.at("epsilon").get<double>();
  r.tolerances.einstein_defect = t.at("einstein_defect").get<double>();
  r.tolerances.dedup = t.at("dedup").get<double>();
  r.setup = j.at("setup");
  r.hypothesis = j.at("hypothesis");
  r.constants = j.at("constants");
  r.necessary_conditions = j.at("necessary_conditions");
  r.invariants = j.at("invariants");
  r.extras = j.at("extras");
  for (const auto& s : j.at("solutions")) r.solutions.push_back(solution_from_json(s));
  r.completeness = j.at("completeness").get<std::map<std::string, std::string>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

inline std::string serialize(const EinsteinReport& r) { return canonical_dump(to_json(r)); }

inline EinsteinReport parse_report(const std::string& text) { return report_from_json(Json::parse(text)); }

// ---------------------------------------------------------------------------
// Report blocks

inline Json setup_json(const FibrationSetup& f) {
  auto dims = [](const std::vector<Subspace>& v) {
    std::vector<int> d;
    for (const auto& s : v) d.push_back(s.dim());
    return d;
  };
  return Json{{"algebra", f.algebra->name()},
              {"dims", {{"g", f.g.dim()}, {"k", f.k.dim()}, {"l", f.l.dim()}, {"p", f.p.dim()}, {"n", f.n.dim()}, {"m", f.m.dim()}}},
              {"p_parts", dims(f.p_parts())},
              {"n_parts", dims(f.n_parts())},
              {"p_casimir_values", f.p_decomposition.casimir_values},
              {"n_casimir_values", f.n_decomposition.casimir_values},
              {"n_override", f.n_decomposition.overridden},
              {"warnings", [&] {
                 std::vector<std::string> w = f.p_decomposition.warnings;
                 w.insert(w.end(), f.n_decomposition.warnings.begin(), f.n_decomposition.warnings.end());
                 return w;
               }()}};
}

inline Json hypothesis_json(const HypothesisVerdict& v) {
  auto pairs = [](const std::vector<PairFlag>& fl) {
    Json a = Json::array();
    for (const auto& p : fl) a.push_back(Json{{"first", p.first + 1}, {"second", p.second + 1}, {"hom_dim", p.hom_dim}});
    return a;
  };
  std::vector<int> red;
  for (int j : v.reducible_n_parts) red.push_back(j + 1);
  return Json{{"holds", v.holds()},
              {"p_parts_inequivalent", v.p_parts_inequivalent},
              {"n_parts_inequivalent", v.n_parts_inequivalent},
              {"n_parts_irreducible", v.n_parts_irreducible},
              {"p_n_disjoint", v.p_n_disjoint},
              {"relaxed", v.relaxed},
              {"p_offending", pairs(v.p_offending)},
              {"n_offending", pairs(v.n_offending)},
              {"pn_offending", pairs(v.pn_offending)},
              {"reducible_n_parts", red}};
}

inline Json constants_json(const StructuralConstants& sc) {
  return Json{{"gamma", maybe_nested(sc.gamma)}, {"c_l_p", maybe_nested(sc.c_l_p)}, {"c_l_n", maybe_nested(sc.c_l_n)},
              {"c_k_n", maybe_nested(sc.c_k_n)}, {"c_n_p", maybe_nested(sc.c_n_p)},   {"q", maybe_nested(sc.q)},
              {"r", maybe_nested(sc.r)},         {"b", maybe_nested(sc.b)},           {"b_parts", maybe_nested(sc.b_parts)},
              {"max_scalar_fit_deviation", sc.max_deviation_accepted}};
}

inline Json conditions_json(const NecessaryConditions& v) {
  Json wi = Json::array();
  for (const auto& w : v.cond_i_witness) wi.push_back(Json{{"n_part", w.part + 1}, {"deviation", w.deviation}});
  Json out{{"cond_i", {{"holds", v.cond_i}, {"witness", wi}, {"lambda", v.cond_i_lambda}}}, {"notes", v.notes}};
  if (v.cond_ii_applicable)
    out["cond_ii"] = Json{{"holds", v.cond_ii}, {"nullity", v.cond_ii_nullity}, {"witness", v.cond_ii_witness}, {"nu", v.cond_ii_nu}};
  else
    out["cond_ii"] = Json{{"applicable", false}};
  return out;
}

inline Json invariants_json(const InvariantReport& r) {
  Json out = Json::object();
  for (const auto& [name, v] : r.residuals) out[name] = v;
  return out;
}

inline SolutionRecord record(const EinsteinSolution& s, std::string route) {
  SolutionRecord r{s.metric.lambda, s.metric.mu, s.einstein_constant, s.defect, to_string(s.kind), {std::move(route)}, std::nullopt};
  if (s.kind != SolutionKind::general_adapted) r.x = s.metric.mu.front() / s.metric.lambda.front();
  return r;
}

// Adds the solutions of one route, merging with equal metrics already present.
inline void merge_route(EinsteinReport& r, const SolutionSet& set, const std::string& route, double dedup = 1e-6) {
  r.completeness[route] = set.completeness;
  for (const auto& n : set.notes) r.notes.push_back(route + ": " + n);
  for (const auto& s : set.solutions) {
    bool merged = false;
    for (auto& have : r.solutions) {
      AdaptedMetric a{have.lambda, have.mu};
      if (a.lambda.size() == s.metric.lambda.size() && a.mu.size() == s.metric.mu.size() && metric_distance(a, s.metric) <= dedup) {
        have.routes.push_back(route);
        merged = true;
      }
    }
    if (!merged) r.solutions.push_back(record(s, route));
  }
  std::stable_sort(r.solutions.begin(), r.solutions.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
    if (std::abs(a.einstein_constant - b.einstein_constant) > 1e-9) return a.einstein_constant < b.einstein_constant;
    auto ca = a.lambda, cb = b.lambda;
    ca.insert(ca.end(), a.mu.begin(), a.mu.end());
    cb.insert(cb.end(), b.mu.begin(), b.mu.end());
    return ca < cb;
  });
}

// ---------------------------------------------------------------------------
// Fibration input

namespace detail {

inline Rational json_rational(const Json& v, const std::string& where) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.dump());
  if (v.is_number_float()) return parse_rational(v.dump());
  throw InputError(where + ": expected a number or a rational string");
}

inline double json_real(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  throw InputError(where + ": expected a number or a rational string");
}

inline StructureConstants<Rational> algebra_constants(const Json& a, std::string& name) {
  if (!a.is_object()) throw InputError("algebra: expected an object");
  if (a.contains("classical")) {
    if (!a.at("classical").is_string()) throw InputError("algebra.classical: expected a string");
    std::string desc = a.at("classical").get<std::string>();
    if (a.contains("n")) {
      if (!a.at("n").is_number_integer()) throw InputError("algebra.n: expected an integer");
      desc += std::to_string(a.at("n").get<int>());
    }
    const auto d = catalog::parse_descriptor(desc);
    catalog::check_descriptor(d);
    name = d.name();
    return catalog::classical_model(d).exact;
  }
  if (a.contains("product")) {
    if (!a.at("product").is_array() || a.at("product").empty()) throw InputError("algebra.product: expected a non-empty array");
    std::vector<StructureConstants<Rational>> parts;
    std::string joined;
    for (const auto& f : a.at("product")) {
      std::string sub;
      parts.push_back(algebra_constants(f, sub));
      joined += (joined.empty() ? "" : "+") + sub;
    }
    name = joined;
    return direct_sum(parts);
  }
  if (!a.contains("dim") || !a.at("dim").is_number_integer()) throw InputError("algebra: needs 'classical', 'product' or integer 'dim'");
  if (!a.contains("structure") || !a.at("structure").is_array()) throw InputError("algebra.structure: expected an array of [i, j, k, value]");
  const int dim = a.at("dim").get<int>();
  std::vector<StructureConstants<Rational>::Entry> es;
  for (std::size_t t = 0; t < a.at("structure").size(); ++t) {
    const Json& e = a.at("structure")[t];
    const std::string where = "algebra.structure[" + std::to_string(t) + "]";
    if (!e.is_array() || e.size() != 4) throw InputError(where + ": expected [i, j, k, value]");
    for (int c = 0; c < 3; ++c)
      if (!e[c].is_number_integer()) throw InputError(where + ": indices must be integers");
    es.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), json_rational(e[3], where)});
  }
  StructureConstants<Rational> sc(dim, es);
  if (sc.jacobi_residual() != 0) throw InputError("algebra.structure: Jacobi identity fails");
  name = a.value("name", "custom" + std::to_string(dim));
  return sc;
}

inline Matrix basis_matrix(const Json& b, int dim, const std::string& what) {
  if (!b.is_array()) throw InputError(what + ": expected an array of vectors");
  Matrix m(dim, static_cast<Eigen::Index>(b.size()));
  for (std::size_t c = 0; c < b.size(); ++c) {
    const std::string where = what + "[" + std::to_string(c) + "]";
    if (!b[c].is_array() || static_cast<int>(b[c].size()) != dim)
      throw InputError(where + ": expected a vector of length " + std::to_string(dim));
    for (int i = 0; i < dim; ++i) m(i, static_cast<Eigen::Index>(c)) = json_real(b[c][i], where);
  }
  return m;
}

}  // namespace detail

inline FibrationSetup parse_fibration(const Json& j, double tol = kDefaultEpsilon, std::uint64_t seed = kDefaultSeed) {
  if (!j.is_object()) throw InputError("fibration input: expected a JSON object");
  for (const char* key : {"algebra", "k_basis", "l_basis"})
    if (!j.contains(key)) throw InputError(std::string("fibration input: missing '") + key + "'");
  std::string name;
  const auto exact = detail::algebra_constants(j.at("algebra"), name);
  const AlgebraPtr g = make_algebra(exact, name);
  FibrationOptions opt;
  opt.tol = tol;
  opt.seed = seed;
  opt.name = j.value("name", name);
  if (j.contains("n_parts")) {
    if (!j.at("n_parts").is_array()) throw InputError("n_parts: expected an array of bases");
    std::vector<Matrix> parts;
    for (std::size_t t = 0; t < j.at("n_parts").size(); ++t)
      parts.push_back(detail::basis_matrix(j.at("n_parts")[t], g->dim(), "n_parts[" + std::to_string(t) + "]"));
    opt.n_parts = parts;
  }
  return make_fibration(g, detail::basis_matrix(j.at("k_basis"), g->dim(), "k_basis"), detail::basis_matrix(j.at("l_basis"), g->dim(), "l_basis"),
                        opt);
}

inline FibrationSetup parse_fibration(const std::string& text, double tol = kDefaultEpsilon, std::uint64_t seed = kDefaultSeed) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_fibration(j, tol, seed);
}

// Fibration input for a Kowalski space, in the same schema.
inline Json kowalski_input(const catalog::KowalskiSpec& spec) {
  const FibrationSetup f = catalog::build_kowalski(spec);
  const auto d = catalog::parse_descriptor(spec.g0);
  auto rows = [](const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::vector<long> v;
      for (Eigen::Index i = 0; i < m.rows(); ++i) v.push_back(std::lround(m(i, c)));
      out.push_back(v);
    }
    return out;
  };
  Json factors = Json::array();
  for (int i = 0; i < spec.n; ++i) factors.push_back(Json{{"classical", d.family}, {"n", d.rank}});
  Json parts = Json::array();
  for (const auto& part : f.n_parts()) parts.push_back(rows(part.basis()));
  return Json{{"name", f.name}, {"algebra", {{"product", factors}}}, {"k_basis", rows(f.k.basis())}, {"l_basis", rows(f.l.basis())}, {"n_parts", parts}};
}

}  // namespace einfib

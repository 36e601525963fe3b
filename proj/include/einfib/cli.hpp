#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "einfib/report.hpp"

namespace einfib::cli {

struct Options {
  std::string format = "json";
  std::string output;
  std::string input;
  std::optional<double> tolerance;
  std::uint64_t seed = kDefaultSeed;
  std::string lambdas, mus;
  std::string method = "all";
  std::string g0 = "su2";
  int n = 0, p = 0;
  std::string family;
  bool all = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_positive(item, what));
  if (out.empty()) throw InputError(what + ": empty list");
  return out;
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string join(const std::vector<double>& v, const char* sep = ";") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + fmt(v[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Shared pieces of the fibration commands

struct Analysis {
  StructuralConstants constants;
  HypothesisVerdict hypothesis;
  NecessaryConditions conditions;
};

inline Analysis analyze_into(EinsteinReport& r, const FibrationSetup& f) {
  Analysis a{structural_constants(f), check_hypothesis(f), {}};
  a.conditions = necessary_conditions(f, a.constants);
  r.name = f.name;
  r.setup = setup_json(f);
  r.hypothesis = hypothesis_json(a.hypothesis);
  r.constants = constants_json(a.constants);
  r.necessary_conditions = conditions_json(a.conditions);
  r.invariants = invariants_json(check_invariants(f, a.constants, f.seed));
  if (a.hypothesis.relaxed) r.notes.push_back("relaxed hypothesis: caller-chosen reducible n parts with scalar Casimir constants");
  if (!a.hypothesis.holds()) r.notes.push_back("decomposition hypothesis fails: block formulas are cross-checked by the curvature oracle");
  return a;
}

inline void solve_into(EinsteinReport& r, const FibrationSetup& f, const Analysis& a, const std::string& method, std::uint64_t seed) {
  const RicciEngine engine(total_space(f, AdaptedMetric::standard(f)), f.tol);
  const bool all = method == "all";
  if (all || method == "binormal") merge_route(r, solve_binormal(f, a.constants, engine), "binormal");
  if (all || method == "symmetric-alpha") {
    try {
      const auto res = solve_binormal_symmetric_alpha(f, a.constants, engine);
      SolutionSet set;
      set.solutions = res.solutions;
      set.notes = res.notes;
      merge_route(r, set, "symmetric-alpha");
      r.extras["symmetric_alpha"] = Json{{"alpha", res.alpha},
                                         {"alpha_deviation", res.alpha_deviation},
                                         {"x", res.x},
                                         {"alpha_fraction", std::to_string(res.alpha_fit.numerator) + "/" + std::to_string(res.alpha_fit.denominator)},
                                         {"alpha_fraction_found", res.alpha_fit.rational},
                                         {"sqrt_rational", res.sqrt_rational},
                                         {"casimir_relation", res.casimir_relation},
                                         {"cp_scalar", res.cp_scalar}};
    } catch (const InputError& e) {
      if (!all) throw;
      r.notes.push_back(std::string("symmetric-alpha: ") + e.what());
    }
  }
  if (all || method == "adapted") {
    AdaptedSolveOptions opt;
    opt.seed = seed;
    merge_route(r, solve_adapted(f, a.constants, engine, opt), "adapted");
  }
}

// ---------------------------------------------------------------------------
// Commands

inline EinsteinReport cmd_analyze(const Options& o, bool solve) {
  const double tol = resolve_epsilon(o.tolerance);
  const std::string text = read_file(o.input);
  EinsteinReport r;
  r.command = solve ? "solve" : "analyze";
  r.input_hash = hash_hex(text);
  r.seed = o.seed;
  r.tolerances.epsilon = tol;
  const FibrationSetup f = parse_fibration(text, tol, o.seed);
  const Analysis a = analyze_into(r, f);
  if (solve) solve_into(r, f, a, o.method, o.seed);
  return r;
}

inline EinsteinReport cmd_ricci(const Options& o) {
  const double tol = resolve_epsilon(o.tolerance);
  const std::string text = read_file(o.input);
  EinsteinReport r;
  r.command = "ricci";
  r.input_hash = hash_hex(text + "|" + o.lambdas + "|" + o.mus);
  r.seed = o.seed;
  r.tolerances.epsilon = tol;
  const FibrationSetup f = parse_fibration(text, tol, o.seed);
  const Analysis a = analyze_into(r, f);
  AdaptedMetric g = AdaptedMetric::standard(f);
  if (!o.lambdas.empty()) g.lambda = parse_list(o.lambdas, "--lambdas");
  if (!o.mus.empty()) g.mu = parse_list(o.mus, "--mus");
  const RicciEngine engine(total_space(f, g), f.tol);
  const auto nu = g.coefficients();
  auto summary = [&](const RicciTensor& t) {
    Json blocks = Json::array();
    for (int j = 0; j < t.summand_count(); ++j) {
      const ScalarFit fit = t.block_fit(j);
      blocks.push_back(Json{{"ric_over_metric", fit.value / nu[j]}, {"deviation", fit.deviation}});
    }
    return Json{{"einstein_constant", t.einstein_constant()}, {"einstein_defect", t.einstein_defect()}, {"blocks", blocks}};
  };
  const RicciTensor oracle = engine.nomizu_path(nu);
  Json paths{{"curvature", summary(oracle)}, {"trace", summary(engine.trace_path(nu))}, {"q_form", summary(engine.q_path(nu))}};
  double dev = std::max(linalg::max_abs(oracle.form - engine.trace_path(nu).form), linalg::max_abs(oracle.form - engine.q_path(nu).form));
  try {
    const RicciTensor formula = ricci_formula(f, a.constants, g);
    paths["block_formulas"] = summary(formula);
    dev = std::max(dev, linalg::max_abs(oracle.form - formula.form));
  } catch (const NumericalError& e) {
    r.notes.push_back(std::string("block formulas unavailable: ") + e.what());
  }
  r.extras["ricci"] = Json{{"lambda", g.lambda}, {"mu", g.mu}, {"paths", paths}, {"max_path_deviation", dev}};
  return r;
}

inline EinsteinReport cmd_kowalski(const Options& o) {
  const double tol = resolve_epsilon(o.tolerance);
  const catalog::KowalskiSpec spec = catalog::kowalski_spec(o.g0, o.n, o.p);
  EinsteinReport r;
  r.command = "kowalski";
  r.input_hash = hash_hex("kowalski g0=" + spec.g0 + " n=" + std::to_string(spec.n) + " p=" + std::to_string(spec.p));
  r.seed = o.seed;
  r.tolerances.epsilon = tol;
  const FibrationSetup f = catalog::build_kowalski(spec, tol);
  const Analysis a = analyze_into(r, f);
  const RicciEngine engine(total_space(f, AdaptedMetric::standard(f)), f.tol);
  merge_route(r, solve_binormal(f, a.constants, engine), "binormal");
  AdaptedSolveOptions opt;
  opt.seed = o.seed;
  SolutionSet adapted = solve_adapted(f, a.constants, engine, opt);
  catalog::certify_kowalski(spec, adapted);
  merge_route(r, adapted, "adapted");

  const auto cubic = catalog::kowalski_cubic(spec);
  Json roots = Json::array();
  for (const auto& z : cubic.roots) roots.push_back({z.real(), z.imag()});
  Json per = Json::array();
  for (const auto& s : r.solutions) {
    const AdaptedMetric g{s.lambda, s.mu};
    const auto pe = projection_einstein(f, a.constants, g, 1e-8);
    Json e{{"x1", g.lambda[0] / g.mu[0]}, {"x2", g.lambda[0] / g.mu[1]}, {"fiber_einstein", pe.fiber.has_value()}, {"base_einstein", pe.base.has_value()},
           {"t_at_x1", cubic(g.lambda[0] / g.mu[0])}};
    if (pe.fiber && pe.base) {
      const auto rec = einstein_fiber_base_relations(f, a.constants, s.einstein_constant, *pe.fiber, *pe.base, g.lambda);
      e["reconstructed"] = Json{{"lambda", rec.lambda}, {"mu", rec.mu}};
    }
    per.push_back(e);
  }
  const auto kc = catalog::kowalski_constants(spec);
  r.extras["kowalski"] = Json{{"g0", spec.g0},
                              {"n", spec.n},
                              {"p", spec.p},
                              {"q", spec.q},
                              {"cubic", {{"coefficients", cubic.coeffs},
                                         {"roots", roots},
                                         {"interval", {cubic.lower, cubic.upper}},
                                         {"root", cubic.root ? Json(*cubic.root) : Json(nullptr)},
                                         {"x2", cubic.x2 ? Json(*cubic.x2) : Json(nullptr)},
                                         {"derivative_discriminant", cubic.delta},
                                         {"t_at_1", cubic.t_at_one}}},
                              {"closed_form_constants", {{"c_l", kc.c_l}, {"b", {kc.b1, kc.b2}}, {"c_k", {kc.c_k1, kc.c_k2}}, {"gamma", kc.gamma},
                                                         {"c_n_p", {kc.c_n1_p, kc.c_n2_p}}}},
                              {"solutions", per}};
  return r;
}

struct RowResult {
  Json json;
  bool match = false;
};

inline RowResult table1_row(const catalog::Table1Row& row, double tol) {
  RowResult out;
  Json j{{"G", row.group}, {"K", row.k}, {"L", row.l}, {"table_x", to_double(row.table_value)}, {"table_x_exact", to_string(row.table_value)},
         {"base_dim", row.base_dim}};
  if (!row.spec) {
    const Rational x = circle_bundle_x_exact(row.base_dim, row.c_k_n);
    j["computed_x"] = Json::array({to_double(x)});
    j["computed_x_exact"] = to_string(x);
    j["source"] = "circle-bundle formula with c_{k,n} = " + to_string(row.c_k_n);
    out.match = x == row.table_value;
  } else {
    const FibrationSetup f = catalog::build_circle_bundle(*row.spec, tol);
    const auto sc = structural_constants(f);
    const RicciEngine engine(total_space(f, AdaptedMetric::standard(f)), f.tol);
    const SolutionSet set = solve_binormal(f, sc, engine);
    std::vector<double> xs, defects;
    for (const auto& s : set.solutions) {
      xs.push_back(s.metric.mu[0] / s.metric.lambda[0]);
      defects.push_back(s.defect);
    }
    const double ckn = require(sc.c_k_n[0], "c_{k,n}");
    j["computed_x"] = xs;
    j["defects"] = defects;
    j["c_k_n"] = ckn;
    j["formula_x"] = circle_bundle_x(f.n.dim(), ckn);
    j["source"] = "binormal solver on the constructed algebra";
    out.match = xs.size() == 1 && std::abs(xs[0] - to_double(row.table_value)) < 1e-9;
  }
  j["match"] = out.match;
  out.json = j;
  return out;
}

inline EinsteinReport cmd_table1(const Options& o) {
  const double tol = resolve_epsilon(o.tolerance);
  EinsteinReport r;
  r.command = "table1";
  r.name = "circle bundles over irreducible Hermitian symmetric spaces";
  r.input_hash = hash_hex(std::string("table1") + (o.all ? " --all" : ""));
  r.seed = o.seed;
  r.tolerances.epsilon = tol;
  Json rows = Json::array();
  const auto specs = o.all ? catalog::table1_sweep() : catalog::table1_representatives();
  for (const auto& s : specs) {
    const RowResult rr = table1_row(catalog::table1_row(s), tol);
    if (!rr.match) r.notes.push_back(rr.json["G"].get<std::string>() + "/" + rr.json["K"].get<std::string>() + ": computed X differs from the tabulated value");
    rows.push_back(rr.json);
  }
  for (const auto& row : catalog::exceptional_rows()) rows.push_back(table1_row(row, tol).json);
  r.extras["table1"] = rows;
  return r;
}

inline EinsteinReport cmd_circle(const Options& o) {
  const double tol = resolve_epsilon(o.tolerance);
  const catalog::CircleBundleSpec spec{catalog::parse_family(o.family), o.n, o.p};
  EinsteinReport r;
  r.command = "circle-bundle";
  r.input_hash = hash_hex("circle-bundle family=" + o.family + " n=" + std::to_string(o.n) + " p=" + std::to_string(o.p));
  r.seed = o.seed;
  r.tolerances.epsilon = tol;
  const FibrationSetup f = catalog::build_circle_bundle(spec, tol);
  const Analysis a = analyze_into(r, f);
  const RicciEngine engine(total_space(f, AdaptedMetric::standard(f)), f.tol);
  merge_route(r, solve_binormal(f, a.constants, engine), "binormal");
  r.extras["table1"] = Json::array({table1_row(catalog::table1_row(spec), tol).json});
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

inline std::string render_csv(const EinsteinReport& r) {
  std::ostringstream out;
  if (r.extras.contains("table1")) {
    out << "G,K,L,computed_x,table_x,match\n";
    for (const auto& row : r.extras["table1"]) {
      out << row["G"].get<std::string>() << "," << row["K"].get<std::string>() << "," << row["L"].get<std::string>() << ","
          << join(row["computed_x"].get<std::vector<double>>()) << "," << fmt(row["table_x"].get<double>()) << "," << (row["match"].get<bool>() ? "yes" : "no")
          << "\n";
    }
    return out.str();
  }
  out << "index,kind,routes,einstein_constant,defect,x,lambda,mu\n";
  for (std::size_t i = 0; i < r.solutions.size(); ++i) {
    const auto& s = r.solutions[i];
    std::string routes;
    for (const auto& rt : s.routes) routes += (routes.empty() ? "" : ";") + rt;
    out << i + 1 << "," << s.kind << "," << routes << "," << fmt(s.einstein_constant) << "," << fmt(s.defect) << "," << (s.x ? fmt(*s.x) : "") << ","
        << join(s.lambda) << "," << join(s.mu) << "\n";
  }
  return out.str();
}

inline std::string render_markdown(const EinsteinReport& r) {
  std::ostringstream out;
  out << "# " << (r.name.empty() ? r.command : r.name) << "\n\n";
  if (r.extras.contains("table1")) {
    out << "| G | K | L | X computed | X table | match |\n|---|---|---|---|---|---|\n";
    for (const auto& row : r.extras["table1"])
      out << "| " << row["G"].get<std::string>() << " | " << row["K"].get<std::string>() << " | " << row["L"].get<std::string>() << " | "
          << join(row["computed_x"].get<std::vector<double>>(), ", ") << " | " << row["table_x_exact"].get<std::string>() << " | "
          << (row["match"].get<bool>() ? "yes" : "no") << " |\n";
    out << "\n";
  }
  if (r.setup.contains("dims")) {
    const Json& d = r.setup["dims"];
    out << "| g | k | l | p | n | s | n parts |\n|---|---|---|---|---|---|---|\n";
    out << "| " << d["g"] << " | " << d["k"] << " | " << d["l"] << " | " << d["p"] << " | " << d["n"] << " | " << r.setup["p_parts"].size() << " | "
        << r.setup["n_parts"].size() << " |\n\n";
  }
  if (!r.solutions.empty()) {
    out << "| # | kind | E | X | lambda | mu | defect |\n|---|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
      const auto& s = r.solutions[i];
      out << "| " << i + 1 << " | " << s.kind << " | " << fmt(s.einstein_constant) << " | " << (s.x ? fmt(*s.x) : "") << " | " << join(s.lambda, ", ")
          << " | " << join(s.mu, ", ") << " | " << fmt(s.defect) << " |\n";
    }
    out << "\n";
  }
  for (const auto& [route, tag] : r.completeness) out << "- " << route << ": " << tag << "\n";
  for (const auto& n : r.notes) out << "- " << n << "\n";
  return out.str();
}

inline std::string render(const EinsteinReport& r, const std::string& format) {
  if (format == "csv") return render_csv(r);
  if (format == "markdown") return render_markdown(r);
  return serialize(r);
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Einstein adapted metrics on homogeneous fibrations", "einfib"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json | csv | markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    c->add_option("--output,-o", o.output, "write the report to a file");
    c->add_option("--tolerance", o.tolerance, "numerical tolerance (overrides EINFIB_TOLERANCE)");
    c->add_option("--seed", o.seed, "seed for decompositions and multi-start search");
  };
  auto* analyze = app.add_subcommand("analyze", "decompositions, constants and necessary conditions");
  auto* solve = app.add_subcommand("solve", "Einstein adapted metrics of a fibration");
  auto* ricci = app.add_subcommand("ricci", "Ricci tensor of an adapted metric by every method");
  auto* kow = app.add_subcommand("kowalski", "Kowalski n-symmetric space G0^n/G0");
  auto* circle = app.add_subcommand("circle-bundle", "circle bundle over a Hermitian symmetric space");
  auto* table = app.add_subcommand("table1", "circle-bundle table");
  for (auto* c : {analyze, solve, ricci, kow, circle, table}) common(c);
  for (auto* c : {analyze, solve, ricci}) c->add_option("--input,-i", o.input, "fibration JSON")->required();
  solve->add_option("--method", o.method, "all | binormal | adapted | symmetric-alpha")
      ->check(CLI::IsMember({"all", "binormal", "adapted", "symmetric-alpha"}));
  ricci->add_option("--lambdas", o.lambdas, "comma-separated fiber coefficients");
  ricci->add_option("--mus", o.mus, "comma-separated base coefficients");
  kow->add_option("--g0", o.g0, "simple factor, e.g. su2");
  kow->add_option("--n", o.n, "number of factors")->required();
  kow->add_option("--p", o.p, "size of the first diagonal block")->required();
  circle->add_option("--family", o.family, "su | so | so-u | sp-u")->required();
  circle->add_option("--n", o.n, "rank parameter")->required();
  circle->add_option("--p", o.p, "block size (su only)");
  table->add_flag("--all", o.all, "every constructible row in the covered ranges");

  std::vector<const char*> argv{"einfib"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    EinsteinReport r;
    if (analyze->parsed()) r = cmd_analyze(o, false);
    if (solve->parsed()) r = cmd_analyze(o, true);
    if (ricci->parsed()) r = cmd_ricci(o);
    if (kow->parsed()) r = cmd_kowalski(o);
    if (circle->parsed()) r = cmd_circle(o);
    if (table->parsed()) r = cmd_table1(o);
    const std::string text = render(r, o.format);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream f(o.output, std::ios::binary);
      if (!f) throw InputError("cannot write '" + o.output + "'");
      f << text;
    }
    return 0;
  } catch (const InputError& e) {
    err << "einfib: input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "einfib: numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    err << "einfib: input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "einfib: internal error: " << e.what() << "\n";
    return 1;
  }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace einfib::cli

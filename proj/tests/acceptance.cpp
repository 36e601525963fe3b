// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "einfib/catalog.hpp"
#include "einfib/checks.hpp"

using namespace einfib;
using namespace einfib::catalog;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string num17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<KowalskiSpec> kowalski_specs(int n_min, int n_max) {
  std::vector<KowalskiSpec> out;
  for (int n = n_min; n <= n_max; ++n)
    for (int p = 2; 2 * p <= n; ++p) out.push_back(kowalski_spec("su2", n, p));
  return out;
}

std::string tag(const KowalskiSpec& s) { return "kowalski(n=" + std::to_string(s.n) + ",p=" + std::to_string(s.p) + ")"; }

std::vector<FibrationSetup> catalog_setups() {
  std::vector<FibrationSetup> out;
  for (const auto& s : table1_sweep()) out.push_back(build_circle_bundle(s));
  for (const auto& s : kowalski_specs(4, 8)) out.push_back(build_kowalski(s));
  out.push_back(build_kowalski(kowalski_spec("su3", 4, 2)));
  return out;
}

// 1. Table 1 rows from the binormal solver, exceptional rows by arithmetic.
Verdict table1() {
  Verdict v;
  int rows = 0;
  double worst = 0.0;
  for (const auto& s : table1_sweep()) {
    const FibrationSetup f = build_circle_bundle(s);
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    const SolutionSet set = solve_binormal(f, sc, e);
    const double want = to_double(table1_value(s));
    ++rows;
    if (set.solutions.size() != 1) {
      v.fail(describe(s) + ": " + std::to_string(set.solutions.size()) + " solutions");
      continue;
    }
    const double x = set.solutions[0].metric.mu[0] / set.solutions[0].metric.lambda[0];
    const double dx = std::abs(x - want);
    if (dx >= 1e-9) v.fail(describe(s) + ": X=" + num17(x) + " table " + to_string(table1_value(s)));
    else worst = std::max(worst, dx);
  }
  for (const auto& r : exceptional_rows()) {
    ++rows;
    const Rational x = circle_bundle_x_exact(r.base_dim, r.c_k_n);
    if (x != r.table_value) v.fail(r.group + ": X=" + to_string(x) + " table " + to_string(r.table_value));
  }
  v.detail = std::to_string(rows) + " rows, max |dX| on matching rows " + num(worst);
  return v;
}

// 2. Kowalski binormal solution sets, X = mu/lambda.
Verdict kowalski_binormal() {
  Verdict v;
  int cases = 0;
  for (int n = 4; n <= 8; ++n)
    for (int p = 2; 2 * p <= n; ++p) {
      const KowalskiSpec spec = kowalski_spec("su2", n, p);
      const FibrationSetup f = build_kowalski(spec);
      const auto sc = structural_constants(f);
      const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
      const SolutionSet set = solve_binormal(f, sc, e);
      std::vector<double> want{1.0};
      if (p == spec.q && n > 4) want.push_back(n / 4.0);
      std::vector<double> got;
      for (const auto& s : set.solutions) got.push_back(s.metric.mu[0] / s.metric.lambda[0]);
      std::sort(got.begin(), got.end());
      ++cases;
      bool ok = got.size() == want.size();
      for (std::size_t i = 0; ok && i < got.size(); ++i) ok = std::abs(got[i] - want[i]) < 1e-9;
      if (!ok) {
        std::string g;
        for (double x : got) g += " " + num17(x);
        v.fail(tag(spec) + ": got {" + g + " }");
      }
    }
  v.detail = std::to_string(cases) + " (p,q) pairs";
  return v;
}

// 3. Kowalski general adapted: standard plus the cubic solution.
Verdict kowalski_adapted() {
  Verdict v;
  int cases = 0;
  double worst_t = 0.0;
  for (const auto& spec : kowalski_specs(5, 8)) {
    ++cases;
    const FibrationSetup f = build_kowalski(spec);
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    const SolutionSet set = solve_adapted(f, sc, e);
    const KowalskiCubic cubic = kowalski_cubic(spec);
    int standard = 0;
    std::vector<EinsteinSolution> others;
    for (const auto& s : set.solutions) {
      if (s.kind == SolutionKind::standard) ++standard;
      else others.push_back(s);
    }
    if (standard != 1 || others.size() != 1) {
      v.fail(tag(spec) + ": " + std::to_string(standard) + " standard, " + std::to_string(others.size()) + " other");
      continue;
    }
    const EinsteinSolution& s = others[0];
    const double x1 = s.metric.lambda[0] / s.metric.mu[0];
    const double t = cubic(x1);
    worst_t = std::max(worst_t, std::abs(t));
    if (!(x1 > cubic.lower && x1 < cubic.upper)) v.fail(tag(spec) + ": X1=" + num17(x1) + " outside the root interval");
    if (!cubic.root || std::abs(x1 - *cubic.root) >= 1e-8) v.fail(tag(spec) + ": X1=" + num17(x1) + " is not the cubic root");
    if (std::abs(t) >= 1e-8) v.fail(tag(spec) + ": |t(X1)|=" + num(std::abs(t)));
    const bool equal = spec.p == spec.q;
    if ((s.kind == SolutionKind::binormal) != equal) v.fail(tag(spec) + ": binormal=" + std::to_string(s.kind == SolutionKind::binormal));
    const auto pe = projection_einstein(f, sc, s.metric, 1e-8);
    if (pe.base.has_value() != equal) v.fail(tag(spec) + ": base Einstein=" + std::to_string(pe.base.has_value()));
  }
  v.detail = std::to_string(cases) + " (p,q) pairs, max |t(X1)| " + num(worst_t);
  return v;
}

AdaptedMetric random_metric(const FibrationSetup& f, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::log(0.2), std::log(5.0));
  AdaptedMetric g;
  for (int a = 0; a < f.s(); ++a) g.lambda.push_back(std::exp(u(rng)));
  for (int j = 0; j < f.n_count(); ++j) g.mu.push_back(std::exp(u(rng)));
  return g;
}

// 4. Ricci paths agree on random adapted metrics.
Verdict oracle_equivalence(const std::vector<FibrationSetup>& setups) {
  Verdict v;
  int fibrations = 0;
  double worst = 0.0;
  std::mt19937_64 rng(20240601);
  for (const auto& f : setups) {
    if (f.algebra->dim() > 24) continue;
    ++fibrations;
    const auto sc = structural_constants(f);
    for (int t = 0; t < 100; ++t) {
      const AdaptedMetric g = random_metric(f, rng);
      const RicciEngine e(total_space(f, g));
      const auto nu = g.coefficients();
      std::vector<Matrix> paths{e.nomizu_path(nu).form, e.trace_path(nu).form, e.q_path(nu).form};
      try {
        paths.push_back(ricci_formula(f, sc, g).form);
      } catch (const NumericalError& err) {
        v.fail(f.name + ": block formula unavailable (" + err.what() + ")");
        break;
      }
      double dev = 0.0;
      for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) dev = std::max(dev, linalg::max_abs(paths[i] - paths[j]));
      worst = std::max(worst, dev);
      if (dev >= 1e-8) {
        v.fail(f.name + ": deviation " + num(dev));
        break;
      }
    }
  }
  v.detail = std::to_string(fibrations) + " fibrations x 100 metrics, max deviation " + num(worst);
  return v;
}

// 5. Invariant suite.
Verdict invariants(const std::vector<FibrationSetup>& setups) {
  Verdict v;
  double worst = 0.0;
  std::size_t checks = 0;
  for (const auto& f : setups) {
    const InvariantReport r = check_invariants(f, structural_constants(f));
    checks += r.residuals.size();
    for (const auto& [name, res] : r.residuals) {
      worst = std::max(worst, res);
      if (!(res < 1e-9)) v.fail(f.name + ": " + name + " = " + num(res));
    }
  }
  v.detail = std::to_string(setups.size()) + " setups, " + std::to_string(checks) + " residuals, max " + num(worst);
  return v;
}

// 6. Every emitted solution is Einstein, and so is its double.
Verdict verification_closure(const std::vector<FibrationSetup>& setups) {
  Verdict v;
  int count = 0;
  double worst = 0.0;
  for (const auto& f : setups) {
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    std::vector<std::pair<std::string, SolutionSet>> routes;
    try {
      routes.emplace_back("binormal", solve_binormal(f, sc, e));
    } catch (const Error& err) {
      routes.emplace_back("binormal", SolutionSet{});
    }
    try {
      routes.emplace_back("symmetric-alpha", SolutionSet{solve_binormal_symmetric_alpha(f, sc, e).solutions});
    } catch (const InputError&) {
      // not a symmetric-fiber setup
    }
    routes.emplace_back("adapted", solve_adapted(f, sc, e));
    for (const auto& [route, set] : routes)
      for (const auto& s : set.solutions) {
        ++count;
        const RicciTensor r1 = e.nomizu_path(s.metric.coefficients());
        const RicciTensor r2 = e.nomizu_path(s.metric.scaled(2.0).coefficients());
        const double d1 = r1.einstein_defect(), d2 = r2.einstein_defect();
        worst = std::max({worst, s.defect, d1, d2});
        const std::string where = f.name + " " + route + " E=" + num17(s.einstein_constant);
        if (!(s.defect < 1e-7) || !(d1 < 1e-7)) v.fail(where + ": defect " + num(std::max(s.defect, d1)));
        if (!(d2 < 1e-7)) v.fail(where + ": scaled defect " + num(d2));
        if (std::abs(r2.einstein_constant() - 0.5 * r1.einstein_constant()) > 1e-9 * std::max(1.0, std::abs(r1.einstein_constant())))
          v.fail(where + ": scaled E " + num17(r2.einstein_constant()));
      }
  }
  v.detail = std::to_string(count) + " solutions, max defect " + num(worst);
  return v;
}

// 7. Fiber/base relations on the Kowalski p = q solutions.
Verdict fiber_base_relations() {
  Verdict v;
  int ratios = 0, reconstructions = 0;
  double worst = 0.0;
  for (int n = 4; n <= 8; n += 2) {
    const KowalskiSpec spec = kowalski_spec("su2", n, n / 2);
    const FibrationSetup f = build_kowalski(spec);
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    for (const auto& s : solve_adapted(f, sc, e).solutions) {
      const auto pe = projection_einstein(f, sc, s.metric, 1e-8);
      if (!pe.base) continue;
      const auto b = horizontal_casimir_scalars(f, sc, s.metric.lambda);
      const double ratio = s.metric.mu[0] / s.metric.mu[1], want = std::sqrt(b[0] / b[1]);
      ++ratios;
      worst = std::max(worst, std::abs(ratio - want));
      if (std::abs(ratio - want) >= 1e-8) v.fail(tag(spec) + ": mu ratio " + num17(ratio) + " vs " + num17(want));
      if (std::abs(*pe.base - s.einstein_constant) <= f.tol * std::max(1.0, std::abs(s.einstein_constant))) continue;  // E = E_N: relations degenerate
      if (!pe.fiber) {
        v.fail(tag(spec) + ": fiber not Einstein");
        continue;
      }
      const AdaptedMetric g = einstein_fiber_base_relations(f, sc, s.einstein_constant, *pe.fiber, *pe.base, s.metric.lambda);
      const double d = metric_distance(g, s.metric);
      ++reconstructions;
      worst = std::max(worst, d);
      if (d >= 1e-8) v.fail(tag(spec) + ": reconstruction off by " + num(d));
    }
  }
  if (reconstructions == 0) v.fail("no non-degenerate solution to reconstruct");
  v.detail = std::to_string(ratios) + " ratio checks, " + std::to_string(reconstructions) + " reconstructions, max deviation " + num(worst);
  return v;
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds, 0 = none
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  std::vector<FibrationSetup> setups;
  auto catalog = [&]() -> const std::vector<FibrationSetup>& {
    if (setups.empty()) setups = catalog_setups();
    return setups;
  };
  const std::vector<Criterion> criteria{
      {1, "table1 reproduction", 30.0, table1},
      {2, "kowalski binormal", 10.0, kowalski_binormal},
      {3, "kowalski general adapted", 60.0, kowalski_adapted},
      {4, "ricci oracle equivalence", 0.0, [&] { return oracle_equivalence(catalog()); }},
      {5, "invariant suite", 0.0, [&] { return invariants(catalog()); }},
      {6, "einstein verification closure", 0.0, [&] { return verification_closure(catalog()); }},
      {7, "fiber/base relations", 0.0, fiber_base_relations},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs >= c.budget) v.fail("runtime " + num(secs) + " s over " + num(c.budget) + " s");
    std::printf("[%s] %d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), v.detail.c_str(), secs);
    for (const auto& f : v.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}

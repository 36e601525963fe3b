#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "einfib/catalog.hpp"
#include "einfib/report.hpp"

using namespace einfib;
using namespace einfib::catalog;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Solved {
  FibrationSetup f;
  StructuralConstants sc;
  RicciEngine engine;

  explicit Solved(FibrationSetup setup)
      : f(std::move(setup)), sc(structural_constants(f)), engine(total_space(f, AdaptedMetric::standard(f)), f.tol) {}
};

// X = mu / lambda of a binormal solution
std::vector<double> binormal_x(const SolutionSet& set) {
  std::vector<double> out;
  for (const auto& s : set.solutions) out.push_back(s.metric.mu[0] / s.metric.lambda[0]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Quadratic, RealRootsAndDoubleRootClamp) {
  EXPECT_EQ(real_roots({1.0, -3.0, 2.0}, 1e-12), (std::vector<double>{1.0, 2.0}));
  EXPECT_TRUE(real_roots({1.0, 0.0, 1.0}, 1e-12).empty());
  const auto d = real_roots({1.0, -2.0, 1.0 + 1e-14}, 1e-9);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d[0], 1.0, 1e-12);
  const auto lin = real_roots({0.0, 2.0, -1.0}, 1e-12);
  ASSERT_EQ(lin.size(), 1u);
  EXPECT_DOUBLE_EQ(lin[0], 0.5);
  EXPECT_TRUE(real_roots({0.0, 0.0, 0.0}, 1e-12).empty());
  const auto small = real_roots({1.0, -1e8, 1.0}, 1e-12);
  ASSERT_EQ(small.size(), 2u);
  EXPECT_NEAR(small[0], 1e-8, 1e-20);
}

TEST(Binormal, KowalskiSetsUpToEight) {
  for (int n = 4; n <= 8; ++n)
    for (int p = 2; p <= n - 2; ++p) {
      Solved s(build_kowalski(kowalski_spec("su2", n, std::min(p, n - p))));
      const SolutionSet set = solve_binormal(s.f, s.sc, s.engine);
      EXPECT_EQ(set.completeness, kCertified);
      const auto xs = binormal_x(set);
      std::vector<double> want{1.0};
      if (2 * p == n && n > 4) want = {1.0, n / 4.0};
      ASSERT_EQ(xs.size(), want.size()) << "n=" << n << " p=" << p;
      for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(xs[i], want[i], 1e-9) << "n=" << n << " p=" << p;
      for (const auto& sol : set.solutions) EXPECT_LT(sol.defect, 1e-7);
    }
}

TEST(ClosedForm, IrreducibleAndCircleBundle) {
  for (const auto& spec : table1_representatives()) {
    Solved s(build_circle_bundle(spec));
    const SolutionSet set = solve_binormal(s.f, s.sc, s.engine);
    ASSERT_EQ(set.solutions.size(), 1u) << describe(spec);
    const double x = set.solutions[0].metric.mu[0];
    const auto cf = irreducible_closed_form(*s.sc.gamma[0], *s.sc.c_l_p[0], *s.sc.c_k_n[0], *s.sc.b[0]);
    ASSERT_EQ(cf.x.size(), 1u) << describe(spec);
    EXPECT_NEAR(cf.x[0], x, 1e-10) << describe(spec);
    EXPECT_NEAR(circle_bundle_x(s.f.n.dim(), *s.sc.c_k_n[0]), x, 1e-10) << describe(spec);
  }
  EXPECT_EQ(circle_bundle_x_exact(6, fraction(1, 2)), fraction(2, 3));
  EXPECT_EQ(circle_bundle_x_exact(32, fraction(1, 2)), fraction(17, 32));
  EXPECT_EQ(circle_bundle_x_exact(54, fraction(1, 2)), fraction(14, 27));
}

TEST(ClosedForm, NegativeDiscriminantHasNoRoots) {
  const auto cf = irreducible_closed_form(0.5, 1.0, 0.0, 1.0);
  EXPECT_LT(cf.delta, 0.0);
  EXPECT_TRUE(cf.x.empty());
}

TEST(Rationality, FitsAndSquares) {
  const auto f = rational_fit(0.75);
  EXPECT_TRUE(f.rational);
  EXPECT_EQ(f.numerator, 3);
  EXPECT_EQ(f.denominator, 4);
  EXPECT_FALSE(rational_fit(std::sqrt(2.0)).rational);
  const auto g = rational_fit(-5.0 / 7.0);
  EXPECT_TRUE(g.rational);
  EXPECT_EQ(g.numerator, -5);
  EXPECT_EQ(g.denominator, 7);
  EXPECT_TRUE(perfect_square(49));
  EXPECT_TRUE(perfect_square(0));
  EXPECT_FALSE(perfect_square(50));
  EXPECT_FALSE(perfect_square(-4));
}

TEST(SymmetricAlpha, HalfAlphaHasIrrationalRoot) {
  Solved s(parse_fibration(slurp(EINFIB_DATA_DIR "/so7_symmetric_fiber.json")));
  ASSERT_GE(s.f.s(), 2);
  const auto r = solve_binormal_symmetric_alpha(s.f, s.sc, s.engine);
  EXPECT_NEAR(r.alpha, 0.5, 1e-12);
  EXPECT_NEAR(r.x, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(r.alpha_fit.rational);
  EXPECT_FALSE(r.sqrt_rational);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_TRUE(solve_binormal(s.f, s.sc, s.engine).solutions.empty());
}

TEST(SymmetricAlpha, DeclinesEqualGammaAndSingleFiberPart) {
  Solved eq(parse_fibration(slurp(EINFIB_DATA_DIR "/so8_equal_gamma.json")));
  EXPECT_THROW(solve_binormal_symmetric_alpha(eq.f, eq.sc, eq.engine), InputError);
  Solved one(build_kowalski(kowalski_spec("su2", 5, 2)));
  EXPECT_THROW(solve_binormal_symmetric_alpha(one.f, one.sc, one.engine), InputError);
}

TEST(NecessaryConditions, KowalskiAndSymmetricFiber) {
  Solved k(build_kowalski(kowalski_spec("su2", 6, 2)));
  const NecessaryConditions c = necessary_conditions(k.f, k.sc);
  EXPECT_TRUE(c.cond_i);
  EXPECT_TRUE(c.cond_i_witness.empty());
  EXPECT_EQ(c.cond_i_lambda, (std::vector<double>{1.0}));
  EXPECT_TRUE(c.cond_ii_applicable);
  EXPECT_TRUE(c.cond_ii);
  EXPECT_GE(c.cond_ii_nullity, 2);
  EXPECT_TRUE(c.cond_ii_witness.empty());

  Solved so7(parse_fibration(slurp(EINFIB_DATA_DIR "/so7_symmetric_fiber.json")));
  const NecessaryConditions d = necessary_conditions(so7.f, so7.sc);
  EXPECT_FALSE(d.cond_i);
  EXPECT_FALSE(d.cond_i_witness.empty());
  EXPECT_TRUE(d.cond_i_lambda.empty());

  Solved circle(build_circle_bundle({CircleFamily::su, 3, 1}));
  EXPECT_FALSE(necessary_conditions(circle.f, circle.sc).cond_ii_applicable);
}

TEST(KowalskiCubic, ClosedFormIdentities) {
  for (int n = 4; n <= 12; ++n)
    for (int p = 2; 2 * p <= n; ++p) {
      const KowalskiSpec spec = kowalski_spec("su2", n, p);
      const KowalskiCubic c = kowalski_cubic(spec);
      const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
      EXPECT_EQ(c.t_at_one, c.t_at_one_closed) << tag;
      EXPECT_EQ(c.delta, c.delta_closed) << tag;
      EXPECT_LT(c.delta, 0) << tag;  // t is monotone: one real root
      EXPECT_LT(c(c.lower), 0.0) << tag;
      EXPECT_GT(c(c.upper), 0.0) << tag;
      ASSERT_TRUE(c.root) << tag;
      EXPECT_LT(std::abs(c(*c.root)), 1e-8) << tag;
      int real = 0;
      for (const auto& z : c.roots) real += std::abs(z.imag()) < 1e-9;
      EXPECT_EQ(real, 1) << tag;
      ASSERT_TRUE(c.x2) << tag;
      if (n == 4) EXPECT_NEAR(*c.root, 1.0, 1e-9) << tag;
    }
}

TEST(Adapted, KowalskiStandardPlusCubicSolution) {
  for (int n = 4; n <= 7; ++n)
    for (int p = 2; 2 * p <= n; ++p) {
      const KowalskiSpec spec = kowalski_spec("su2", n, p);
      Solved s(build_kowalski(spec));
      SolutionSet set = solve_adapted(s.f, s.sc, s.engine);
      certify_kowalski(spec, set);
      const std::string tag = "n=" + std::to_string(n) + " p=" + std::to_string(p);
      EXPECT_EQ(set.completeness, kCertified) << tag;
      ASSERT_EQ(set.solutions.size(), n == 4 ? 1u : 2u) << tag;
      int standard = 0;
      for (const auto& sol : set.solutions) {
        EXPECT_LT(sol.defect, 1e-7) << tag;
        EXPECT_DOUBLE_EQ(sol.metric.lambda[0], 1.0);
        if (sol.kind == SolutionKind::standard) {
          ++standard;
          continue;
        }
        EXPECT_EQ(sol.kind == SolutionKind::binormal, p == spec.q) << tag;
        const auto pe = projection_einstein(s.f, s.sc, sol.metric, 1e-8);
        EXPECT_TRUE(pe.fiber.has_value()) << tag;
        EXPECT_EQ(pe.base.has_value(), p == spec.q) << tag;
      }
      EXPECT_EQ(standard, 1) << tag;
    }
}

TEST(Adapted, BinormalSolutionsAreFixedPoints) {
  Solved s(build_kowalski(kowalski_spec("su2", 6, 3)));
  const SolutionSet bin = solve_binormal(s.f, s.sc, s.engine);
  const SolutionSet ad = solve_adapted(s.f, s.sc, s.engine);
  for (const auto& b : bin.solutions) {
    bool found = false;
    for (const auto& a : ad.solutions) found = found || metric_distance(a.metric, b.metric) < 1e-8;
    EXPECT_TRUE(found);
  }
}

TEST(Adapted, DeterministicAndSorted) {
  Solved s(build_kowalski(kowalski_spec("su2", 5, 2)));
  const SolutionSet a = solve_adapted(s.f, s.sc, s.engine);
  const SolutionSet b = solve_adapted(s.f, s.sc, s.engine);
  ASSERT_EQ(a.solutions.size(), b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) EXPECT_EQ(a.solutions[i].metric.mu, b.solutions[i].metric.mu);
  for (std::size_t i = 1; i < a.solutions.size(); ++i) EXPECT_LE(a.solutions[i - 1].einstein_constant, a.solutions[i].einstein_constant);
}

TEST(Verification, RejectsNonEinsteinAndScales) {
  Solved s(build_kowalski(kowalski_spec("su2", 5, 2)));
  EXPECT_GT(verify_solution(s.engine, {{1.0}, {0.3, 3.0}}, s.f.tol).defect, 1e-3);
  const EinsteinSolution e = verify_solution(s.engine, AdaptedMetric::standard(s.f), s.f.tol);
  EXPECT_LT(e.defect, 1e-12);
  EXPECT_EQ(e.kind, SolutionKind::standard);
  const EinsteinSolution e2 = verify_solution(s.engine, AdaptedMetric::standard(s.f).scaled(2.0), s.f.tol);
  EXPECT_DOUBLE_EQ(e2.metric.lambda[0], 1.0);  // reported up to homothety
  const RicciTensor r2 = s.engine.nomizu_path(AdaptedMetric::standard(s.f).scaled(2.0).coefficients());
  EXPECT_NEAR(r2.einstein_constant(), 0.5 * e.einstein_constant, 1e-12);
  EXPECT_EQ(classify({{1.0}, {2.0, 2.0}}, kKindTolerance), SolutionKind::binormal);
  EXPECT_EQ(classify({{1.0}, {2.0, 2.1}}, kKindTolerance), SolutionKind::general_adapted);
  EXPECT_EQ(parse_kind(to_string(SolutionKind::general_adapted)), SolutionKind::general_adapted);
}

TEST(FiberBase, RatiosAndReconstructionOnEqualSplit) {
  for (int n : {6, 8}) {
    Solved s(build_kowalski(kowalski_spec("su2", n, n / 2)));
    const SolutionSet set = solve_adapted(s.f, s.sc, s.engine);
    int checked = 0;
    for (const auto& sol : set.solutions) {
      const auto pe = projection_einstein(s.f, s.sc, sol.metric, 1e-8);
      if (!pe.fiber || !pe.base) continue;
      const auto b = horizontal_casimir_scalars(s.f, s.sc, sol.metric.lambda);
      const auto r = fiber_base_ratios(s.f, s.sc, sol.metric.lambda);
      EXPECT_NEAR(r.mu_ratio[1], std::sqrt(b[1] / b[0]), 1e-12);
      EXPECT_NEAR(sol.metric.mu[1] / sol.metric.mu[0], r.mu_ratio[1], 1e-8);
      if (std::abs(*pe.base - sol.einstein_constant) < 1e-9) continue;  // standard metric: E = E_N
      const AdaptedMetric g = einstein_fiber_base_relations(s.f, s.sc, sol.einstein_constant, *pe.fiber, *pe.base, sol.metric.lambda);
      EXPECT_LT(metric_distance(g, sol.metric), 1e-8);
      ++checked;
    }
    EXPECT_GE(checked, 1) << n;
  }
}

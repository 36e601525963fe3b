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

void expect_same_fibration(const FibrationSetup& a, const FibrationSetup& b) {
  ASSERT_EQ(a.algebra->dim(), b.algebra->dim());
  EXPECT_LT(linalg::max_abs(a.algebra->killing() - b.algebra->killing()), 1e-12);
  EXPECT_TRUE(a.k.same_span(b.k, 1e-12));
  EXPECT_TRUE(a.l.same_span(b.l, 1e-12));
  ASSERT_EQ(a.n_count(), b.n_count());
  for (int j = 0; j < a.n_count(); ++j) EXPECT_TRUE(a.n_parts()[j].same_span(b.n_parts()[j], 1e-12)) << j;
}

}  // namespace

TEST(MatrixModels, BasesAreClosedAndIndependent) {
  EXPECT_EQ(su_basis(4).size(), 15u);
  EXPECT_EQ(so_basis(6).size(), 15u);
  EXPECT_EQ(sp_basis(2).size(), 10u);
  EXPECT_EQ(u_basis(3).size(), 9u);
  EXPECT_EQ(rank(flatten(sp_basis(3))), 21);
  // realified su(3) sits inside so(6)
  const MatrixAlgebra so6 = matrix_algebra("so6", so_basis(6));
  std::vector<ComplexMatrix> r;
  for (const auto& a : su_basis(3)) r.push_back(realify(a));
  EXPECT_NO_THROW(so6.exact_coordinates(r));
  // sp(n) contains u(n) through A -> diag(A, conj A)
  const MatrixAlgebra sp2 = matrix_algebra("sp2", sp_basis(2));
  std::vector<ComplexMatrix> u;
  for (const auto& a : u_basis(2)) u.push_back(sp_embed_a(a));
  EXPECT_NO_THROW(sp2.exact_coordinates(u));
  EXPECT_THROW(sp2.exact_coordinates({imag_sym(4, 0, 3)}), InputError);
}

TEST(Table1, ValuesAreCanonicalFractions) {
  EXPECT_EQ(to_string(table1_value({CircleFamily::su, 4, 1})), "2/3");
  EXPECT_EQ(to_string(table1_value({CircleFamily::su, 4, 2})), "5/8");
  EXPECT_EQ(to_string(table1_value({CircleFamily::so_u, 3, 0})), "2/3");
  EXPECT_EQ(to_string(table1_value({CircleFamily::sp_u, 2, 0})), "2/3");
  EXPECT_EQ(to_string(table1_value({CircleFamily::so, 6, 0})), "5/4");
  const auto ex = exceptional_rows();
  ASSERT_EQ(ex.size(), 2u);
  EXPECT_EQ(circle_bundle_x_exact(ex[0].base_dim, ex[0].c_k_n), ex[0].table_value);
  EXPECT_EQ(circle_bundle_x_exact(ex[1].base_dim, ex[1].c_k_n), ex[1].table_value);
}

TEST(Table1, SweepCoversRequestedRanges) {
  const auto sweep = table1_sweep();
  int su = 0, so = 0, sou = 0, sp = 0;
  for (const auto& s : sweep) {
    su += s.family == CircleFamily::su;
    so += s.family == CircleFamily::so;
    sou += s.family == CircleFamily::so_u;
    sp += s.family == CircleFamily::sp_u;
  }
  EXPECT_EQ(su, 1 + 2 + 3 + 4);
  EXPECT_EQ(so, 3);
  EXPECT_EQ(sou, 3);
  EXPECT_EQ(sp, 3);
}

TEST(Table1, BinormalSolverMatchesClosedFormOnUnitaryAndSymplecticRows) {
  for (const auto& s : table1_sweep()) {
    if (s.family == CircleFamily::so) continue;
    const FibrationSetup f = build_circle_bundle(s);
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    const SolutionSet set = solve_binormal(f, sc, e);
    ASSERT_EQ(set.solutions.size(), 1u) << describe(s);
    EXPECT_NEAR(set.solutions[0].metric.mu[0], to_double(table1_value(s)), 1e-9) << describe(s);
  }
}

TEST(Table1, OrthogonalRowsFollowCircleBundleFormula) {
  for (int n = 5; n <= 7; ++n) {
    const CircleBundleSpec s{CircleFamily::so, n, 0};
    const FibrationSetup f = build_circle_bundle(s);
    const auto sc = structural_constants(f);
    const RicciEngine e(total_space(f, AdaptedMetric::standard(f)));
    const SolutionSet set = solve_binormal(f, sc, e);
    ASSERT_EQ(set.solutions.size(), 1u);
    // base Q_n of real dimension 2(n-2) with c_{k,n} = 1/2
    const double want = (n - 1.0) / (2.0 * (n - 2.0));
    EXPECT_NEAR(set.solutions[0].metric.mu[0], want, 1e-12) << n;
    EXPECT_NEAR(circle_bundle_x(2 * (n - 2), 0.5), want, 1e-15);
  }
}

TEST(Table1, RowLabels) {
  const Table1Row r = table1_row({CircleFamily::su, 5, 2});
  EXPECT_EQ(r.group, "SU(5)");
  EXPECT_EQ(r.k, "S(U(2)xU(3))");
  EXPECT_EQ(r.l, "SU(2)xSU(3)");
  EXPECT_EQ(r.base_dim, 12);
  EXPECT_EQ(table1_row({CircleFamily::so_u, 4, 0}).group, "SO(8)");
}

TEST(CircleBundle, ValidationAndFamilies) {
  EXPECT_EQ(parse_family("so2n"), CircleFamily::so_u);
  EXPECT_EQ(parse_family("sp"), CircleFamily::sp_u);
  EXPECT_EQ(family_name(parse_family("so-u")), "so-u");
  EXPECT_THROW(parse_family("e6"), InputError);
  EXPECT_THROW(parse_family("g2"), InputError);
  EXPECT_THROW(build_circle_bundle({CircleFamily::su, 4, 4}), InputError);
  EXPECT_THROW(build_circle_bundle({CircleFamily::so, 4, 0}), InputError);
  EXPECT_THROW(build_circle_bundle({CircleFamily::sp_u, 9, 0}), InputError);
}

TEST(Kowalski, SpecValidation) {
  EXPECT_EQ(kowalski_spec("su2", 7, 3).q, 4);
  EXPECT_THROW(kowalski_spec("su2", 6, 4), InputError);  // p > q
  EXPECT_THROW(kowalski_spec("su2", 5, 1), InputError);
  EXPECT_THROW(kowalski_spec("su2", 3, 2), InputError);
  EXPECT_THROW(kowalski_spec("so4", 6, 3), InputError);
  EXPECT_THROW(kowalski_spec("e8", 6, 3), InputError);
}

TEST(Kowalski, OtherSimpleFactor) {
  const FibrationSetup f = build_kowalski(kowalski_spec("su3", 4, 2));
  EXPECT_EQ(f.algebra->dim(), 32);
  EXPECT_EQ(f.l.dim(), 8);
  EXPECT_EQ(f.n.dim(), 16);
}

TEST(Kowalski, JsonInputSpansTheSameFibration) {
  for (auto [n, p] : {std::pair{5, 2}, std::pair{6, 3}}) {
    const KowalskiSpec spec = kowalski_spec("su2", n, p);
    expect_same_fibration(parse_fibration(kowalski_input(spec)), build_kowalski(spec));
  }
  expect_same_fibration(parse_fibration(slurp(EINFIB_DATA_DIR "/kowalski_su2_n6_p3.json")), build_kowalski(kowalski_spec("su2", 6, 3)));
  expect_same_fibration(parse_fibration(slurp(EINFIB_DATA_DIR "/kowalski_su2_n4_structure.json")), build_kowalski(kowalski_spec("su2", 4, 2)));
}

TEST(Kowalski, CertificationRejectsExtraneousSolutions) {
  const KowalskiSpec spec = kowalski_spec("su2", 6, 2);
  SolutionSet set;
  set.solutions.push_back({{{1.0}, {1.0, 1.0}}, 1.0, SolutionKind::standard, 0.0});
  certify_kowalski(spec, set);
  EXPECT_EQ(set.completeness, kBestEffort);  // the cubic solution is missing
  const KowalskiCubic c = kowalski_cubic(spec);
  set.solutions.push_back({{{1.0}, {1.0 / *c.root, 1.0 / *c.x2}}, 1.0, SolutionKind::general_adapted, 0.0});
  certify_kowalski(spec, set);
  EXPECT_EQ(set.completeness, kCertified);
  set.solutions.push_back({{{1.0}, {0.3, 0.4}}, 1.0, SolutionKind::general_adapted, 0.0});
  certify_kowalski(spec, set);
  EXPECT_EQ(set.completeness, kBestEffort);
}

#include <gtest/gtest.h>

#include "einfib/catalog.hpp"

using namespace einfib;
using namespace einfib::catalog;

namespace {

// Re tr(XY) on a matrix basis, exactly.
RationalMatrix trace_form(const std::vector<ComplexMatrix>& basis) {
  const int d = static_cast<int>(basis.size());
  RationalMatrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = (basis[i] * basis[j]).re.trace();
  return out;
}

void expect_killing_multiple(const std::string& descriptor, long factor) {
  const MatrixAlgebra m = classical_model(parse_descriptor(descriptor));
  const RationalMatrix diff = m.exact.killing() - trace_form(m.basis).scaled(Rational(factor));
  EXPECT_TRUE(diff.is_zero()) << descriptor;
}

}  // namespace

TEST(Killing, TraceFormMultiples) {
  expect_killing_multiple("su2", 4);
  expect_killing_multiple("su3", 6);
  expect_killing_multiple("su4", 8);
  expect_killing_multiple("so5", 3);
  expect_killing_multiple("so6", 4);
  expect_killing_multiple("sp1", 4);
  expect_killing_multiple("sp2", 6);
}

TEST(Killing, NegativeDefiniteOnCompactAlgebras) {
  for (const char* d : {"su2", "su3", "so5", "so7", "sp2"}) {
    const AlgebraPtr g = build_classical(d);
    EXPECT_TRUE(g->form_positive_definite()) << d;
    EXPECT_LT(g->jacobi_residual(), 1e-12) << d;
    EXPECT_LT(g->killing_invariance_residual(), 1e-12) << d;
  }
}

TEST(Classical, Dimensions) {
  for (const char* d : {"su2", "su5", "so3", "so7", "sp1", "sp3", "so(6)", "su(4)"}) {
    const ClassicalDescriptor c = parse_descriptor(d);
    EXPECT_EQ(build_classical(c)->dim(), classical_dimension(c)) << d;
  }
  EXPECT_EQ(classical_dimension(parse_descriptor("su5")), 24);
  EXPECT_EQ(classical_dimension(parse_descriptor("sp3")), 21);
}

TEST(Classical, RejectsBadDescriptors) {
  for (const char* d : {"so4", "su1", "so2", "sp0", "e6", "gl3", "su", "su13", "su(x)"}) EXPECT_THROW(build_classical(d), InputError) << d;
}

TEST(StructureConstants, ExactJacobiAndDirectSum) {
  const MatrixAlgebra su2 = classical_model(parse_descriptor("su2"));
  EXPECT_EQ(su2.exact.jacobi_residual(), Rational(0));
  const auto sum = direct_sum(std::vector<StructureConstants<Rational>>{su2.exact, su2.exact, su2.exact});
  EXPECT_EQ(sum.dim(), 9);
  EXPECT_EQ(sum.jacobi_residual(), Rational(0));
  const Dense<Rational> k = sum.killing();
  for (int i = 0; i < 3; ++i)
    for (int j = 3; j < 9; ++j) EXPECT_EQ(k(i, j), Rational(0));
}

TEST(Subspace, ComplementIsOrthogonalAndComplete) {
  const AlgebraPtr g = build_classical("su3");
  const MatrixAlgebra m = classical_model(parse_descriptor("su3"));
  // su(2) in the upper left corner
  std::vector<ComplexMatrix> h;
  for (const auto& x : su_basis(2)) h.push_back(embed(x, 3, 0));
  const Subspace hs(g, m.coordinates(h), "h");
  EXPECT_LT(hs.closure_residual(), 1e-12);
  const Subspace c = complement(hs, whole(g), "c");
  EXPECT_EQ(c.dim(), 5);
  EXPECT_LT(linalg::max_abs(hs.orthonormal().transpose() * g->invariant_form() * c.orthonormal()), 1e-12);
  EXPECT_LT(c.invariance_residual(hs), 1e-12);
  const Subspace all = span_of({hs, c}, "all");
  EXPECT_TRUE(all.same_span(whole(g), 1e-12));
  EXPECT_LT(linalg::max_abs(c.orthonormal().transpose() * g->invariant_form() * c.orthonormal() - Matrix::Identity(5, 5)), 1e-12);
}

TEST(Subspace, NonDiagonalGramProjectsCorrectly) {
  const AlgebraPtr g = build_classical("su3");
  Matrix b = Matrix::Zero(8, 2);
  b(0, 0) = 1.0;
  b(1, 0) = 2.0;
  b(1, 1) = 1.0;
  b(5, 1) = -3.0;
  const Subspace u(g, b, "u");
  EXPECT_LT(linalg::max_abs(u.projector() * b - b), 1e-12);
  EXPECT_LT(linalg::max_abs(u.projector() * u.projector() - u.projector()), 1e-12);
  EXPECT_THROW(Subspace(g, Matrix::Zero(7, 1), "bad"), InputError);
  Matrix dep(8, 2);
  dep.col(0) = b.col(0);
  dep.col(1) = 2.0 * b.col(0);
  EXPECT_THROW(Subspace(g, dep, "dep"), InputError);
}

TEST(Subspace, SubalgebraCarriesBrackets) {
  const AlgebraPtr g = build_classical("so5");
  const MatrixAlgebra m = classical_model(parse_descriptor("so5"));
  std::vector<ComplexMatrix> h;
  for (const auto& x : so_basis(3)) h.push_back(embed(x, 5, 0));
  const Subspace hs(g, m.coordinates(h), "so3");
  const AlgebraPtr sub = subalgebra(hs, "so3");
  EXPECT_EQ(sub->dim(), 3);
  EXPECT_LT(sub->jacobi_residual(), 1e-12);
  EXPECT_LT(sub->invariance_residual(sub->invariant_form()), 1e-12);
}

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "einfib/core.hpp"

namespace einfib {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

// Singular values below tol * max(1, sigma_max) count as zero.
inline double rank_threshold(double sigma_max, double tol) { return tol * std::max(1.0, sigma_max); }

inline int rank(const Matrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& s = svd.singularValues();
  const double cut = rank_threshold(s(0), tol);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

// Orthonormal (Euclidean) basis of ker(a), as columns.
inline Matrix nullspace(const Matrix& a, double tol) {
  const Eigen::Index n = a.cols();
  if (n == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(n, n);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cut = rank_threshold(s.size() ? s(0) : 0.0, tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

// Orthonormal (Euclidean) basis of the column space.
inline Matrix column_space(const Matrix& a, double tol) {
  if (a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cut = rank_threshold(s.size() ? s(0) : 0.0, tol);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

inline Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

inline Matrix hcat(const std::vector<Matrix>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const auto& b : blocks) cols += b.cols();
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return out;
}

inline Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

// Largest absolute entry; zero for empty matrices.
inline double max_abs(const Matrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// Columns W with W^T form W = I spanning the columns of v. Throws if the
// restricted form is not positive definite.
inline Matrix form_orthonormal(const Matrix& v, const Matrix& form, const std::string& what) {
  if (v.cols() == 0) return v;
  const Matrix gram = symmetrize(v.transpose() * form * v);
  Eigen::LLT<Matrix> llt(gram);
  if (llt.info() != Eigen::Success)
    throw InputError(what + ": invariant form restricted to the subspace is not positive definite");
  // W = V L^{-T}
  return llt.matrixL().solve(v.transpose()).transpose();
}

inline double condition_number(const Matrix& sym) {
  if (sym.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = std::abs(ev(0)), hi = std::abs(ev(ev.size() - 1));
  return lo > 0 ? hi / lo : INFINITY;
}

// Lexicographic comparison with a tolerance on each coordinate.
inline int compare_lex(const Vector& a, const Vector& b, double tol) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) < b(i) - tol) return -1;
    if (a(i) > b(i) + tol) return 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

}  // namespace linalg
}  // namespace einfib

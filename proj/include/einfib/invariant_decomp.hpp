#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "einfib/liealg.hpp"

namespace einfib {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct ModuleDecomposition {
  std::vector<Subspace> parts;
  std::vector<double> casimir_values;  // Casimir of the acting algebra on each part
  std::vector<int> commutant_dims;     // 1 for irreducible parts
  double min_gap = INFINITY;           // smallest eigenvalue gap that was split
  bool overridden = false;
  bool has_equivalent_parts = false;
  std::vector<std::string> warnings;
};

namespace detail {

// Matrices of ad(h_i) on W in orthonormal coordinates (skew-symmetric).
inline std::vector<Matrix> restricted_action(const Subspace& h, const Subspace& w) {
  std::vector<Matrix> out;
  const Matrix& form = w.algebra().invariant_form();
  const Matrix wo = w.orthonormal();
  for (int i = 0; i < h.dim(); ++i)
    out.push_back(wo.transpose() * form * w.algebra().ad(Vector(h.orthonormal().col(i))) * wo);
  return out;
}

inline double casimir_value(const std::vector<Matrix>& action, Eigen::Index r) {
  if (r == 0) return 0.0;
  double t = 0.0;
  for (const auto& a : action) t -= (a * a).trace();
  return t / static_cast<double>(r);
}

// Basis of symmetric r x r matrices, orthonormal for the Frobenius product.
inline std::vector<std::pair<int, int>> symmetric_index(int r) {
  std::vector<std::pair<int, int>> idx;
  for (int a = 0; a < r; ++a)
    for (int b = a; b < r; ++b) idx.emplace_back(a, b);
  return idx;
}

inline Matrix symmetric_unit(int r, int a, int b) {
  Matrix s = Matrix::Zero(r, r);
  if (a == b) {
    s(a, a) = 1.0;
  } else {
    s(a, b) = s(b, a) = std::sqrt(0.5);
  }
  return s;
}

// Orthonormal basis of the kernel of a PSD matrix.
inline Matrix psd_kernel(const Matrix& m, double tol) {
  if (m.rows() == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::symmetrize(m));
  const Vector& ev = es.eigenvalues();
  const double cut = tol * std::max(1.0, std::abs(ev(ev.size() - 1)));
  Eigen::Index k = 0;
  while (k < ev.size() && ev(k) <= cut) ++k;
  return es.eigenvectors().leftCols(k);
}

}  // namespace detail

// Symmetric endomorphisms of W commuting with ad(h), as r x r matrices in the
// orthonormal basis of W. Kernel of T -> -sum_i [A_i, [A_i, T]].
inline std::vector<Matrix> symmetric_commutant(const Subspace& h, const Subspace& w, double tol = kDefaultEpsilon) {
  const int r = w.dim();
  if (r == 0) return {};
  const auto action = detail::restricted_action(h, w);
  const auto idx = detail::symmetric_index(r);
  const int np = static_cast<int>(idx.size());
  Matrix cas = Matrix::Zero(r, r);
  for (const auto& a : action) cas += a * a;
  Matrix m(np, np);
  for (int q = 0; q < np; ++q) {
    const Matrix s = detail::symmetric_unit(r, idx[q].first, idx[q].second);
    Matrix omega = -(cas * s + s * cas);
    for (const auto& a : action) omega += 2.0 * a * s * a;
    for (int p = 0; p < np; ++p) {
      const auto [i, j] = idx[p];
      m(p, q) = i == j ? omega(i, i) : std::sqrt(0.5) * (omega(i, j) + omega(j, i));
    }
  }
  const Matrix ker = detail::psd_kernel(m, tol);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Matrix t = Matrix::Zero(r, r);
    for (int p = 0; p < np; ++p) t += ker(p, c) * detail::symmetric_unit(r, idx[p].first, idx[p].second);
    out.push_back(t);
  }
  return out;
}

// dim Hom_h(U1, U2): linear maps intertwining the two actions.
inline int hom_dimension(const Subspace& h, const Subspace& u1, const Subspace& u2, double tol = kDefaultEpsilon) {
  const int r1 = u1.dim(), r2 = u2.dim();
  if (r1 == 0 || r2 == 0) return 0;
  const auto a1 = detail::restricted_action(h, u1);
  const auto a2 = detail::restricted_action(h, u2);
  const int np = r1 * r2;
  Matrix m = Matrix::Zero(np, np);
  for (std::size_t i = 0; i < a1.size(); ++i) {
    // column (a,b) of K_i is vec(A2 E_ab - E_ab A1)
    Matrix k = Matrix::Zero(np, np);
    for (int a = 0; a < r2; ++a)
      for (int b = 0; b < r1; ++b) {
        Matrix e = Matrix::Zero(r2, r1);
        e(a, b) = 1.0;
        const Matrix c = a2[i] * e - e * a1[i];
        k.col(a * r1 + b) = Eigen::Map<const Vector>(c.data(), np);
      }
    m += k.transpose() * k;
  }
  return static_cast<int>(detail::psd_kernel(m, tol).cols());
}

namespace detail {

inline void split_recursive(const Subspace& h, const Subspace& w, double tol, std::mt19937_64& rng, std::vector<Subspace>& out,
                            std::vector<int>& comm_dims, double& min_gap) {
  const auto comm = symmetric_commutant(h, w, tol);
  if (comm.size() <= 1) {
    out.push_back(w);
    comm_dims.push_back(static_cast<int>(comm.size()));
    return;
  }
  std::uniform_int_distribution<int> coeff(1, 97);
  const int r = w.dim();
  Matrix t = Matrix::Zero(r, r);
  for (const auto& c : comm) t += (static_cast<double>(coeff(rng)) / 7.0) * c;
  Eigen::SelfAdjointEigenSolver<Matrix> es(linalg::symmetrize(t));
  const Vector& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<std::pair<int, int>> clusters;
  int start = 0;
  for (int i = 1; i <= r; ++i) {
    if (i < r) {
      const double gap = (ev(i) - ev(i - 1)) / scale;
      if (gap < 10.0 * tol) continue;
      if (gap < 1e3 * tol)
        throw NumericalError("ambiguous eigenvalue gap " + std::to_string(gap) + " while decomposing " + w.label() + " under " + h.label());
      min_gap = std::min(min_gap, gap);
    }
    clusters.emplace_back(start, i);
    start = i;
  }
  if (clusters.size() == 1) throw NumericalError("generic commutant element of " + w.label() + " has a single eigenvalue");
  const Matrix wo = w.orthonormal();
  for (const auto& [a, b] : clusters) {
    Subspace piece(w.algebra_ptr(), wo * es.eigenvectors().middleCols(a, b - a), w.label(), tol);
    split_recursive(h, piece, tol, rng, out, comm_dims, min_gap);
  }
}

inline bool part_less(const Subspace& a, double ca, const Subspace& b, double cb, double tol) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (std::abs(ca - cb) > 1e3 * tol * std::max(1.0, std::abs(ca))) return ca < cb;
  const Matrix& pa = a.projector();
  const Matrix& pb = b.projector();
  return linalg::compare_lex(Eigen::Map<const Vector>(pa.data(), pa.size()), Eigen::Map<const Vector>(pb.data(), pb.size()), 1e3 * tol) < 0;
}

inline void finish(const Subspace& h, ModuleDecomposition& d, double tol) {
  std::vector<std::size_t> order(d.parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    d.casimir_values.push_back(casimir_value(restricted_action(h, d.parts[i]), d.parts[i].dim()));
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return part_less(d.parts[x], d.casimir_values[x], d.parts[y], d.casimir_values[y], tol);
  });
  ModuleDecomposition sorted = d;
  sorted.parts.clear();
  sorted.casimir_values.clear();
  sorted.commutant_dims.clear();
  for (std::size_t i : order) {
    sorted.parts.push_back(d.parts[i]);
    sorted.casimir_values.push_back(d.casimir_values[i]);
    sorted.commutant_dims.push_back(d.commutant_dims[i]);
  }
  d = std::move(sorted);
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    for (std::size_t j = i + 1; j < d.parts.size(); ++j)
      if (d.parts[i].dim() == d.parts[j].dim() && hom_dimension(h, d.parts[i], d.parts[j], tol) > 0) d.has_equivalent_parts = true;
  if (d.has_equivalent_parts) d.warnings.push_back("equivalent summands present: the decomposition is not unique");
}

}  // namespace detail

// Splits the ad(h)-invariant subspace W into irreducible summands. Parts are
// ordered by (dimension, Casimir value, lexicographic projector).
inline ModuleDecomposition decompose(const Subspace& h, const Subspace& w, double tol = kDefaultEpsilon, std::uint64_t seed = kDefaultSeed) {
  if (w.invariance_residual(h) > tol) throw InputError(w.label() + " is not invariant under " + h.label());
  ModuleDecomposition d;
  std::mt19937_64 rng(seed);
  std::vector<Subspace> raw;
  if (w.dim() > 0) detail::split_recursive(h, w, tol, rng, raw, d.commutant_dims, d.min_gap);
  for (std::size_t i = 0; i < raw.size(); ++i) d.parts.push_back(raw[i].relabeled(w.label() + "_" + std::to_string(i + 1)));
  detail::finish(h, d, tol);
  for (std::size_t i = 0; i < d.parts.size(); ++i) d.parts[i] = d.parts[i].relabeled(w.label() + "_" + std::to_string(i + 1));
  return d;
}

// Accepts caller-supplied parts after checking invariance, orthogonality and
// that they span W. Reducible parts are accepted with a warning.
inline ModuleDecomposition decompose_with_override(const Subspace& h, const Subspace& w, const std::vector<Subspace>& parts,
                                                   double tol = kDefaultEpsilon) {
  ModuleDecomposition d;
  d.overridden = true;
  int total = 0;
  const Matrix& form = w.algebra().invariant_form();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    if (p.invariance_residual(h) > tol) throw InputError("override part " + p.label() + " is not invariant under " + h.label());
    if (!w.contains(p.basis(), tol)) throw InputError("override part " + p.label() + " is not contained in " + w.label());
    for (std::size_t j = 0; j < i; ++j)
      if (linalg::max_abs(p.orthonormal().transpose() * form * parts[j].orthonormal()) > tol)
        throw InputError("override parts " + parts[j].label() + " and " + p.label() + " are not orthogonal");
    total += p.dim();
    const auto comm = symmetric_commutant(h, p, tol);
    d.commutant_dims.push_back(static_cast<int>(comm.size()));
    if (comm.size() > 1) d.warnings.push_back("override part " + p.label() + " is reducible under " + h.label());
    d.parts.push_back(p);
    d.casimir_values.push_back(detail::casimir_value(detail::restricted_action(h, p), p.dim()));
  }
  if (total != w.dim()) throw InputError("override parts do not span " + w.label());
  for (std::size_t i = 0; i < d.parts.size(); ++i)
    for (std::size_t j = i + 1; j < d.parts.size(); ++j)
      if (d.parts[i].dim() == d.parts[j].dim() && hom_dimension(h, d.parts[i], d.parts[j], tol) > 0) d.has_equivalent_parts = true;
  return d;
}

}  // namespace einfib

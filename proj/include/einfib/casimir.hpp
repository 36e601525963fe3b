#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einfib/fibration.hpp"
#include "einfib/liealg.hpp"

namespace einfib {

using MaybeScalar = std::optional<double>;

// C_U = sum_i ad(u_i) ad(u_i') with beta(u_i, u_j') = delta_ij.
inline Matrix casimir(const Subspace& u, const Matrix& beta) {
  const LieAlgebra& g = u.algebra();
  const int d = g.dim();
  Matrix c = Matrix::Zero(d, d);
  if (u.dim() == 0) return c;
  const Matrix& v = u.orthonormal();
  const Matrix gram = linalg::symmetrize(v.transpose() * beta * v);
  Eigen::FullPivLU<Matrix> lu(gram);
  if (!lu.isInvertible() || linalg::condition_number(gram) > 1e12)
    throw InputError("casimir: bilinear form restricted to " + u.label() + " is degenerate");
  const Matrix dual = v * lu.inverse();
  for (int i = 0; i < u.dim(); ++i) c += g.ad(Vector(v.col(i))) * g.ad(Vector(dual.col(i)));
  return c;
}

// Casimir with respect to the Killing form.
inline Matrix casimir(const Subspace& u) { return casimir(u, u.algebra().killing()); }

// op restricted to W in the orthonormal basis of W (compression by the
// orthogonal projector).
inline Matrix compress(const Matrix& op, const Subspace& w) {
  const Matrix& wo = w.orthonormal();
  return wo.transpose() * w.algebra().invariant_form() * op * wo;
}

struct ScalarFit {
  double value = 0.0;
  double deviation = 0.0;  // Frobenius norm of the non-scalar remainder
};

inline ScalarFit fit_scalar(const Matrix& m) {
  ScalarFit f;
  if (m.rows() == 0) return f;
  f.value = m.trace() / static_cast<double>(m.rows());
  f.deviation = (m - f.value * Matrix::Identity(m.rows(), m.cols())).norm();
  return f;
}

// Scalar c with op|_W = c Id, or nullopt. Throws if W is not op-invariant.
inline MaybeScalar scalar_on(const Matrix& op, const Subspace& w, double tol = kDefaultEpsilon) {
  const Matrix& wo = w.orthonormal();
  const Matrix image = op * wo;
  if (w.containment_residual(image) > tol * std::max(1.0, linalg::max_abs(op)))
    throw NumericalError("scalar_on: " + w.label() + " is not invariant under the operator");
  const ScalarFit f = fit_scalar(compress(op, w));
  if (f.deviation > tol) return std::nullopt;
  return f.value;
}

// Fit of the bilinear form S on W against the Killing form: S|_W = c Phi|_W.
inline ScalarFit fit_form(const Matrix& s, const Subspace& w) {
  ScalarFit f;
  if (w.dim() == 0) return f;
  const Matrix& wo = w.orthonormal();
  const Matrix sw = linalg::symmetrize(wo.transpose() * s * wo);
  const Matrix pw = linalg::symmetrize(wo.transpose() * w.algebra().killing() * wo);
  f.value = (sw * pw.inverse()).trace() / static_cast<double>(w.dim());
  f.deviation = (sw - f.value * pw).norm();
  return f;
}

inline MaybeScalar form_scalar_on(const Matrix& s, const Subspace& w, double tol = kDefaultEpsilon) {
  const ScalarFit f = fit_form(s, w);
  if (f.deviation > tol) return std::nullopt;
  return f.value;
}

// Q_{UV}(X, Y) = tr(pi_U ad_X pi_V ad_Y).
inline double q_form(const Subspace& u, const Subspace& v, const Vector& x, const Vector& y) {
  const LieAlgebra& g = u.algebra();
  return (u.projector() * g.ad(x) * v.projector() * g.ad(y)).trace();
}

// Gram matrix of Q_{UV} on the standard basis of g.
inline Matrix q_matrix(const Subspace& u, const Subspace& v) {
  const LieAlgebra& g = u.algebra();
  const int d = g.dim();
  Matrix left(d, d * d), right(d, d * d);
  for (int a = 0; a < d; ++a) {
    const Matrix la = u.projector() * g.ad(a) * v.projector();
    const Matrix ra = g.ad(a).transpose();
    left.row(a) = Eigen::Map<const Vector>(la.data(), d * d).transpose();
    right.row(a) = Eigen::Map<const Vector>(ra.data(), d * d).transpose();
  }
  return left * right.transpose();
}

// Casimir operators of the pieces of a fibration, with respect to Phi.
struct FibrationCasimirs {
  Matrix g, k, l, p;
  std::vector<Matrix> p_parts, n_parts;
  // C_{p_a} compressed to n_j, indexed [j][a]
  std::vector<std::vector<Matrix>> p_on_n;
};

inline FibrationCasimirs fibration_casimirs(const FibrationSetup& f) {
  FibrationCasimirs c;
  c.g = casimir(f.g);
  c.k = casimir(f.k);
  c.l = f.l.dim() ? casimir(f.l) : Matrix::Zero(f.g.dim(), f.g.dim());
  c.p = casimir(f.p);
  for (const auto& pa : f.p_parts()) c.p_parts.push_back(casimir(pa));
  for (const auto& nj : f.n_parts()) {
    c.n_parts.push_back(casimir(nj));
    std::vector<Matrix> row;
    for (const auto& cpa : c.p_parts) row.push_back(linalg::symmetrize(compress(cpa, nj)));
    c.p_on_n.push_back(row);
  }
  return c;
}

// Scalars attached to a fibration. Entries are null where the relevant form is
// not a multiple of Phi.
struct StructuralConstants {
  std::vector<MaybeScalar> gamma;                                // [a]
  std::vector<MaybeScalar> c_l_p;                                // [a]
  std::vector<MaybeScalar> c_l_n, c_k_n;                         // [j]
  std::vector<std::vector<MaybeScalar>> c_n_p;                   // [j][a]
  std::vector<std::vector<std::vector<MaybeScalar>>> q;          // [c][b][a]
  std::vector<std::vector<std::vector<MaybeScalar>>> r;          // [j][i][k]
  std::vector<MaybeScalar> b;                                    // [j], C_p on n_j
  std::vector<std::vector<MaybeScalar>> b_parts;                 // [j][a], C_{p_a} on n_j
  FibrationCasimirs casimirs;
  double max_deviation_accepted = 0.0;  // largest scalar-fit residual among non-null entries
};

inline StructuralConstants structural_constants(const FibrationSetup& f) {
  const double tol = f.tol;
  StructuralConstants sc;
  sc.casimirs = fibration_casimirs(f);
  const auto& cas = sc.casimirs;
  const Matrix& phi = f.algebra->killing();
  const auto& pp = f.p_parts();
  const auto& np = f.n_parts();
  const std::size_t s = pp.size(), nn = np.size();
  auto take = [&](const ScalarFit& fit) -> MaybeScalar {
    if (fit.deviation > tol) return std::nullopt;
    sc.max_deviation_accepted = std::max(sc.max_deviation_accepted, fit.deviation);
    return fit.value;
  };
  const Matrix q_kk = q_matrix(f.k, f.k);
  for (std::size_t a = 0; a < s; ++a) {
    sc.gamma.push_back(take(fit_form(q_kk, pp[a])));
    sc.c_l_p.push_back(take(fit_form(phi * cas.l, pp[a])));
  }
  for (std::size_t j = 0; j < nn; ++j) {
    sc.c_l_n.push_back(take(fit_form(phi * cas.l, np[j])));
    sc.c_k_n.push_back(take(fit_form(phi * cas.k, np[j])));
    sc.b.push_back(take(fit_form(phi * cas.p, np[j])));
    std::vector<MaybeScalar> row, brow;
    for (std::size_t a = 0; a < s; ++a) {
      row.push_back(take(fit_form(phi * cas.n_parts[j], pp[a])));
      brow.push_back(take(fit_form(phi * cas.p_parts[a], np[j])));
    }
    sc.c_n_p.push_back(row);
    sc.b_parts.push_back(brow);
  }
  sc.q.assign(s, std::vector<std::vector<MaybeScalar>>(s, std::vector<MaybeScalar>(s)));
  for (std::size_t c = 0; c < s; ++c)
    for (std::size_t b = 0; b < s; ++b) {
      const Matrix qm = q_matrix(pp[b], pp[c]);
      for (std::size_t a = 0; a < s; ++a) sc.q[c][b][a] = take(fit_form(qm, pp[a]));
    }
  sc.r.assign(nn, std::vector<std::vector<MaybeScalar>>(nn, std::vector<MaybeScalar>(nn)));
  for (std::size_t j = 0; j < nn; ++j)
    for (std::size_t i = 0; i < nn; ++i) {
      const Matrix qm = q_matrix(np[j], np[i]);
      for (std::size_t k = 0; k < nn; ++k) sc.r[j][i][k] = take(fit_form(qm, np[k]));
    }
  return sc;
}

inline double require(const MaybeScalar& v, const std::string& what) {
  if (!v) throw NumericalError("structural constant " + what + " is not scalar for this fibration");
  return *v;
}

}  // namespace einfib

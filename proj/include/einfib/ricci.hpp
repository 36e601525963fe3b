#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "einfib/casimir.hpp"
#include "einfib/fibration.hpp"
#include "einfib/liealg.hpp"

namespace einfib {

// Adapted metric lambda_a B on p_a plus mu_k B on n_k.
struct AdaptedMetric {
  std::vector<double> lambda, mu;

  static AdaptedMetric standard(const FibrationSetup& f) {
    return {std::vector<double>(f.s(), 1.0), std::vector<double>(f.n_count(), 1.0)};
  }

  AdaptedMetric scaled(double c) const {
    AdaptedMetric out = *this;
    for (auto& x : out.lambda) x *= c;
    for (auto& x : out.mu) x *= c;
    return out;
  }

  std::vector<double> coefficients() const {
    std::vector<double> out = lambda;
    out.insert(out.end(), mu.begin(), mu.end());
    return out;
  }
};

inline void check_metric(const FibrationSetup& f, const AdaptedMetric& g) {
  if (static_cast<int>(g.lambda.size()) != f.s() || static_cast<int>(g.mu.size()) != f.n_count())
    throw InputError("metric has " + std::to_string(g.lambda.size()) + "+" + std::to_string(g.mu.size()) + " coefficients, fibration needs " +
                     std::to_string(f.s()) + "+" + std::to_string(f.n_count()));
  for (double x : g.coefficients())
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError("metric coefficients must be positive");
}

// G-invariant metric sum_j nu_j beta|_{m_j} on G/H; the summands are
// beta-orthogonal and span the complement of h.
struct HomogeneousMetric {
  Subspace isotropy;
  std::vector<Subspace> summands;
  std::vector<double> coeffs;
};

inline HomogeneousMetric total_space(const FibrationSetup& f, const AdaptedMetric& g) {
  check_metric(f, g);
  HomogeneousMetric h{f.l, f.p_parts(), g.coefficients()};
  h.summands.insert(h.summands.end(), f.n_parts().begin(), f.n_parts().end());
  return h;
}

inline HomogeneousMetric base_space(const FibrationSetup& f, const std::vector<double>& mu) {
  if (static_cast<int>(mu.size()) != f.n_count()) throw InputError("base metric needs one coefficient per n_j");
  return {f.k, f.n_parts(), mu};
}

// The fiber K/L, with k realized as an algebra carrying the restriction of B.
inline HomogeneousMetric fiber_space(const FibrationSetup& f, const std::vector<double>& lambda) {
  if (static_cast<int>(lambda.size()) != f.s()) throw InputError("fiber metric needs one coefficient per p_a");
  const AlgebraPtr k = subalgebra(f.k, "k", f.tol);
  auto inside = [&](const Subspace& u) { return Subspace(k, coordinates(f.k, u.orthonormal()), u.label(), f.tol); };
  HomogeneousMetric h{inside(f.l), {}, lambda};
  for (const auto& pa : f.p_parts()) h.summands.push_back(inside(pa));
  return h;
}

// Ricci form Ric(Z_x, Z_y) in the basis Z concatenating the orthonormal bases
// of the summands.
struct RicciTensor {
  Matrix form;
  std::vector<int> offsets, sizes;
  std::vector<double> coeffs;

  int summand_count() const { return static_cast<int>(sizes.size()); }

  Matrix block(int i, int j) const { return form.block(offsets[i], offsets[j], sizes[i], sizes[j]); }

  // Ric|_{m_j} = c B|_{m_j}: c and the Frobenius deviation from scalar.
  ScalarFit block_fit(int j) const { return fit_scalar(linalg::symmetrize(block(j, j))); }

  // Ric in a metric-orthonormal basis.
  Matrix orthonormal_form() const {
    Vector s(form.rows());
    for (int j = 0; j < summand_count(); ++j) s.segment(offsets[j], sizes[j]).setConstant(1.0 / std::sqrt(coeffs[j]));
    return s.asDiagonal() * form * s.asDiagonal();
  }

  double einstein_constant() const {
    const Matrix r = orthonormal_form();
    return r.rows() ? r.trace() / static_cast<double>(r.rows()) : 0.0;
  }

  // max |Ric - E g| in a metric-orthonormal basis, E = tr/dim.
  double einstein_defect() const {
    const Matrix r = orthonormal_form();
    if (r.rows() == 0) return 0.0;
    const double e = r.trace() / static_cast<double>(r.rows());
    return linalg::max_abs(r - e * Matrix::Identity(r.rows(), r.cols()));
  }
};

// Metric-independent data for the three Ricci computations on one G/H.
class RicciEngine {
 public:
  explicit RicciEngine(const HomogeneousMetric& layout, double tol = kDefaultEpsilon) : h_(layout.isotropy), parts_(layout.summands) {
    const LieAlgebra& g = h_.algebra();
    const int d = g.dim();
    std::vector<Matrix> blocks;
    for (const auto& s : parts_) {
      offsets_.push_back(k_);
      sizes_.push_back(s.dim());
      k_ += s.dim();
      blocks.push_back(s.orthonormal());
    }
    if (k_ + h_.dim() != d) throw InputError("summands and isotropy do not add up to the algebra");
    z_ = linalg::hcat(blocks, d);
    const Matrix& beta = g.invariant_form();
    const Matrix all = linalg::hcat(h_.orthonormal(), z_);
    if (linalg::max_abs(all.transpose() * beta * all - Matrix::Identity(d, d)) > std::sqrt(tol))
      throw InputError("summands are not orthogonal to each other and to the isotropy algebra");
    owner_.resize(k_);
    for (int j = 0; j < static_cast<int>(parts_.size()); ++j)
      for (int t = 0; t < sizes_[j]; ++t) owner_[offsets_[j] + t] = j;

    const Matrix zt_beta = z_.transpose() * beta;
    std::vector<Matrix> ad_z(k_);
    for (int y = 0; y < k_; ++y) ad_z[y] = g.ad(Vector(z_.col(y)));
    a_.assign(k_, Matrix(k_, k_));
    for (int y = 0; y < k_; ++y) a_[y] = zt_beta * ad_z[y] * z_;  // (w, z) -> beta(Z_w, [Z_y, Z_z])
    const Matrix& pl = h_.projector();
    hl_.assign(static_cast<std::size_t>(k_) * k_, Matrix());
    for (int i = 0; i < k_; ++i)
      for (int x = 0; x < k_; ++x) {
        const Vector w = pl * (ad_z[i] * z_.col(x));
        hl_[static_cast<std::size_t>(i) * k_ + x] = zt_beta * g.ad(w) * z_;
      }
    phi_m_ = z_.transpose() * g.killing() * z_;
    for (const auto& u : parts_) {
      std::vector<Matrix> row;
      for (const auto& v : parts_) row.push_back(z_.transpose() * q_matrix(u, v) * z_);
      q_.push_back(row);
    }
  }

  int dim() const { return k_; }
  const Matrix& basis() const { return z_; }

  // Curvature-tensor oracle: Ric(X,Y) = sum_i <R(f_i,X)Y, f_i> with
  // R(X,Y) = [L_X, L_Y] - L_[X,Y].
  RicciTensor nomizu_path(const std::vector<double>& nu) const {
    const Vector s = scales(nu);
    const auto af = scaled_a(s);
    std::vector<Matrix> l(k_);
    for (int x = 0; x < k_; ++x) l[x] = nomizu_basis(af, x);
    Matrix ric = Matrix::Zero(k_, k_);
    for (int x = 0; x < k_; ++x)
      for (int i = 0; i < k_; ++i) {
        const Matrix comm_row = l[i].row(i) * l[x] - l[x].row(i) * l[i];
        Vector bracket_row = Vector::Zero(k_);
        for (int w = 0; w < k_; ++w)
          if (af[i](w, x) != 0.0) bracket_row += af[i](w, x) * l[w].row(i).transpose();
        const Matrix& hix = hl_[static_cast<std::size_t>(i) * k_ + x];
        // f-coordinates of [[f_i,f_x]_l, f_y], row i
        Vector lrow(k_);
        for (int y = 0; y < k_; ++y) lrow(y) = s(i) * hix(i, y) / (s(i) * s(x) * s(y));
        ric.row(x) += comm_row - bracket_row.transpose() - lrow.transpose();
      }
    return finish(linalg::symmetrize(ric), s, nu);
  }

  // Ric = -1/4 tr(2 P_X^* P_Y + T_X T_Y) - 1/2 Phi(X,Y) + tr P_U(X,Y).
  RicciTensor trace_path(const std::vector<double>& nu) const {
    const Vector s = scales(nu);
    const auto af = scaled_a(s);
    std::vector<Matrix> t(k_, Matrix(k_, k_));
    for (int x = 0; x < k_; ++x)
      for (int w = 0; w < k_; ++w) t[x].col(w) = af[w].row(x).transpose();  // T_x(z, w) = af[w](x, z)
    Vector tr_p(k_);
    for (int z = 0; z < k_; ++z) tr_p(z) = af[z].trace();
    Matrix ric(k_, k_);
    for (int x = 0; x < k_; ++x)
      for (int y = x; y < k_; ++y) {
        const double pp = (af[x].array() * af[y].array()).sum();
        const double tt = (t[x] * t[y]).trace();
        double pu = 0.0;
        for (int z = 0; z < k_; ++z) pu += -0.5 * (af[y](x, z) + af[x](y, z)) * tr_p(z);
        const double phi = phi_m_(x, y) / (s(x) * s(y));
        ric(x, y) = ric(y, x) = -0.25 * (2.0 * pp + tt) - 0.5 * phi + pu;
      }
    return finish(ric, s, nu);
  }

  // Ric(X,Y) = 1/2 sum_{j,k} (nu_k/nu_j - nu_a nu_b / (2 nu_k nu_j)) Q_{m_j m_k}(X,Y) - 1/2 Phi(X,Y)
  // for X in m_a, Y in m_b.
  RicciTensor q_path(const std::vector<double>& nu) const {
    check(nu);
    const int m = static_cast<int>(parts_.size());
    Matrix first = Matrix::Zero(k_, k_), second = Matrix::Zero(k_, k_);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        first += (nu[k] / nu[j]) * q_[j][k];
        second += (1.0 / (2.0 * nu[k] * nu[j])) * q_[j][k];
      }
    Matrix ric(k_, k_);
    for (int x = 0; x < k_; ++x)
      for (int y = 0; y < k_; ++y) ric(x, y) = 0.5 * (first(x, y) - nu[owner_[x]] * nu[owner_[y]] * second(x, y)) - 0.5 * phi_m_(x, y);
    RicciTensor r{linalg::symmetrize(ric), offsets_, sizes_, nu};
    return r;
  }

  // Nomizu operator L_X on m in a metric-orthonormal basis, X in g.
  Matrix nomizu(const std::vector<double>& nu, const Vector& x) const {
    const Vector s = scales(nu);
    const auto af = scaled_a(s);
    const LieAlgebra& g = h_.algebra();
    const Matrix& beta = g.invariant_form();
    const Vector xm = s.cwiseProduct(z_.transpose() * beta * x);  // metric-orthonormal coordinates of the m-part
    Matrix out = Matrix::Zero(k_, k_);
    for (int w = 0; w < k_; ++w)
      if (xm(w) != 0.0) out += xm(w) * nomizu_basis(af, w);
    const Vector xl = h_.projector() * x;
    out += s.asDiagonal() * (z_.transpose() * beta * g.ad(xl) * z_) * s.cwiseInverse().asDiagonal();
    return out;
  }

 private:
  void check(const std::vector<double>& nu) const {
    if (nu.size() != parts_.size()) throw InputError("metric coefficient count does not match the summands");
    for (double v : nu)
      if (!(v > 0.0)) throw InputError("metric coefficients must be positive");
  }

  Vector scales(const std::vector<double>& nu) const {
    check(nu);
    Vector s(k_);
    for (int x = 0; x < k_; ++x) s(x) = std::sqrt(nu[owner_[x]]);
    return s;
  }

  // af[y](w, z) = <f_w, [f_y, f_z]_m>, f_x = Z_x / sqrt(nu).
  std::vector<Matrix> scaled_a(const Vector& s) const {
    std::vector<Matrix> af(k_);
    const Vector inv = s.cwiseInverse();
    for (int y = 0; y < k_; ++y) af[y] = (s.asDiagonal() * a_[y] * inv.asDiagonal()) / s(y);
    return af;
  }

  // L_{f_x}(z, y) = 1/2 (af[x](z,y) - af[y](x,z) - af[x](y,z))
  Matrix nomizu_basis(const std::vector<Matrix>& af, int x) const {
    Matrix l(k_, k_);
    for (int z = 0; z < k_; ++z)
      for (int y = 0; y < k_; ++y) l(z, y) = 0.5 * (af[x](z, y) - af[y](x, z) - af[x](y, z));
    return l;
  }

  RicciTensor finish(const Matrix& ric_f, const Vector& s, const std::vector<double>& nu) const {
    return RicciTensor{s.asDiagonal() * ric_f * s.asDiagonal(), offsets_, sizes_, nu};
  }

  Subspace h_;
  std::vector<Subspace> parts_;
  std::vector<int> offsets_, sizes_, owner_;
  int k_ = 0;
  Matrix z_;
  std::vector<Matrix> a_;
  std::vector<Matrix> hl_;
  Matrix phi_m_;
  std::vector<std::vector<Matrix>> q_;
};

inline double einstein_defect(const RicciTensor& r) { return r.einstein_defect(); }

// Ricci blocks of an adapted metric; summand order is p_1..p_s, n_1..n_n.
struct RicciBlocks {
  std::vector<double> vertical, horizontal;
  std::vector<double> vertical_deviation, horizontal_deviation;
  double off_diagonal = 0.0;  // Ric(p_a,p_b), Ric(n_i,n_j) for different parts
  double mixed = 0.0;         // Ric(p, n)
};

inline RicciBlocks blocks_of(const RicciTensor& r, int s) {
  RicciBlocks b;
  const int total = r.summand_count();
  for (int j = 0; j < total; ++j) {
    const ScalarFit fit = r.block_fit(j);
    if (j < s) {
      b.vertical.push_back(fit.value);
      b.vertical_deviation.push_back(fit.deviation);
    } else {
      b.horizontal.push_back(fit.value);
      b.horizontal_deviation.push_back(fit.deviation);
    }
    for (int i = 0; i < j; ++i) {
      const double v = linalg::max_abs(r.block(i, j));
      if ((i < s) == (j < s))
        b.off_diagonal = std::max(b.off_diagonal, v);
      else
        b.mixed = std::max(b.mixed, v);
    }
  }
  return b;
}

// q_a: Ricci coefficient of the fiber metric on p_a.
inline double fiber_coefficient(const StructuralConstants& sc, const std::vector<double>& lambda, int a) {
  const int s = static_cast<int>(lambda.size());
  double sum = 0.0;
  for (int b = 0; b < s; ++b)
    for (int c = 0; c < s; ++c)
      sum += (lambda[a] * lambda[a] / (2.0 * lambda[c] * lambda[b]) - lambda[c] / lambda[b]) *
             require(sc.q[c][b][a], "q^{" + std::to_string(c) + std::to_string(b) + "}_" + std::to_string(a));
  return 0.5 * sum + 0.5 * require(sc.gamma[a], "gamma_" + std::to_string(a));
}

// r_k: Ricci coefficient of the base metric on n_k.
inline double base_coefficient(const StructuralConstants& sc, const std::vector<double>& mu, int k) {
  const int n = static_cast<int>(mu.size());
  double sum = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      sum += (mu[k] * mu[k] / (2.0 * mu[i] * mu[j]) - mu[i] / mu[j]) *
             require(sc.r[j][i][k], "r^{" + std::to_string(j) + std::to_string(i) + "}_" + std::to_string(k));
  return 0.5 * sum + 0.5;
}

// Vertical coefficients: q_a + lambda_a^2/4 sum_j c_{n_j,a} / mu_j^2.
inline std::vector<double> ricci_vertical(const StructuralConstants& sc, const AdaptedMetric& g) {
  std::vector<double> out;
  for (std::size_t a = 0; a < g.lambda.size(); ++a) {
    double sum = 0.0;
    for (std::size_t j = 0; j < g.mu.size(); ++j) sum += require(sc.c_n_p[j][a], "c_{n_j,a}") / (g.mu[j] * g.mu[j]);
    out.push_back(fiber_coefficient(sc, g.lambda, static_cast<int>(a)) + 0.25 * g.lambda[a] * g.lambda[a] * sum);
  }
  return out;
}

// sum_a lambda_a C_{p_a} compressed to n_k (as the form B(C., .)).
inline Matrix weighted_p_casimir(const StructuralConstants& sc, const std::vector<double>& lambda, int k) {
  const auto& row = sc.casimirs.p_on_n[k];
  Matrix m = Matrix::Zero(row.front().rows(), row.front().cols());
  for (std::size_t a = 0; a < row.size(); ++a) m += lambda[a] * row[a];
  return m;
}

// Horizontal coefficients -1/(2 mu_k) b^k(lambda) + r_k, with the deviation of
// sum_a lambda_a C_{p_a} from a scalar on n_k.
inline std::vector<ScalarFit> ricci_horizontal(const StructuralConstants& sc, const AdaptedMetric& g) {
  std::vector<ScalarFit> out;
  for (std::size_t k = 0; k < g.mu.size(); ++k) {
    const ScalarFit b = fit_scalar(weighted_p_casimir(sc, g.lambda, static_cast<int>(k)));
    const double r = base_coefficient(sc, g.mu, static_cast<int>(k));
    out.push_back({-b.value / (2.0 * g.mu[k]) + r, b.deviation / (2.0 * g.mu[k])});
  }
  return out;
}

// Mixed block Ric(p_a, n_k) = lambda_a mu_k / 4 sum_j B(C_{n_j} X, Y) / mu_j^2.
inline Matrix ricci_mixed(const FibrationSetup& f, const StructuralConstants& sc, const AdaptedMetric& g, int a, int k) {
  const Matrix& beta = f.algebra->invariant_form();
  Matrix c = Matrix::Zero(f.g.dim(), f.g.dim());
  for (std::size_t j = 0; j < g.mu.size(); ++j) c += sc.casimirs.n_parts[j] / (g.mu[j] * g.mu[j]);
  const Matrix& pa = f.p_parts()[a].orthonormal();
  const Matrix& nk = f.n_parts()[k].orthonormal();
  return 0.25 * g.lambda[a] * g.mu[k] * (c * pa).transpose() * beta * nk;
}

// Ricci tensor assembled from the block formulas, in the adapted basis.
inline RicciTensor ricci_formula(const FibrationSetup& f, const StructuralConstants& sc, const AdaptedMetric& g) {
  check_metric(f, g);
  const int s = f.s(), n = f.n_count();
  RicciTensor r;
  int at = 0;
  for (const auto& p : f.p_parts()) {
    r.offsets.push_back(at);
    r.sizes.push_back(p.dim());
    at += p.dim();
  }
  for (const auto& q : f.n_parts()) {
    r.offsets.push_back(at);
    r.sizes.push_back(q.dim());
    at += q.dim();
  }
  r.coeffs = g.coefficients();
  r.form = Matrix::Zero(at, at);
  const auto vert = ricci_vertical(sc, g);
  for (int a = 0; a < s; ++a) r.form.block(r.offsets[a], r.offsets[a], r.sizes[a], r.sizes[a]).diagonal().setConstant(vert[a]);
  for (int k = 0; k < n; ++k) {
    const int o = r.offsets[s + k], d = r.sizes[s + k];
    const Matrix blk = -weighted_p_casimir(sc, g.lambda, k) / (2.0 * g.mu[k]) +
                       base_coefficient(sc, g.mu, k) * Matrix::Identity(d, d);
    r.form.block(o, o, d, d) = linalg::symmetrize(blk);
  }
  for (int a = 0; a < s; ++a)
    for (int k = 0; k < n; ++k) {
      const Matrix m = ricci_mixed(f, sc, g, a, k);
      r.form.block(r.offsets[a], r.offsets[s + k], m.rows(), m.cols()) = m;
      r.form.block(r.offsets[s + k], r.offsets[a], m.cols(), m.rows()) = m.transpose();
    }
  return r;
}

}  // namespace einfib

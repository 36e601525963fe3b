#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "einfib/casimir.hpp"
#include "einfib/fibration.hpp"

namespace einfib {

// Named residuals of the identities every fibration must satisfy; each should
// be at round-off level.
struct InvariantReport {
  std::vector<std::pair<std::string, double>> residuals;

  double worst() const {
    double w = 0.0;
    for (const auto& [name, r] : residuals) w = std::max(w, r);
    return w;
  }
  bool passes(double tol) const { return worst() <= tol; }
  void add(std::string name, double r) { residuals.emplace_back(std::move(name), r); }
};

namespace detail {

// max |Q_{UV}(x_i, y_j)| over the orthonormal bases of X and Y.
inline double q_block_max(const Subspace& u, const Subspace& v, const Subspace& x, const Subspace& y) {
  if (x.dim() == 0 || y.dim() == 0) return 0.0;
  return linalg::max_abs(x.orthonormal().transpose() * q_matrix(u, v) * y.orthonormal());
}

}  // namespace detail

inline InvariantReport check_invariants(const FibrationSetup& f, const StructuralConstants& sc, std::uint64_t seed = kDefaultSeed) {
  InvariantReport rep;
  const LieAlgebra& g = *f.algebra;
  const int d = g.dim();
  const Matrix id = Matrix::Identity(d, d);
  const auto& pp = f.p_parts();
  const auto& np = f.n_parts();
  const Matrix& phi = g.killing();

  rep.add("jacobi", g.jacobi_residual());
  rep.add("killing ad-invariance", g.killing_invariance_residual());

  // Q_{UV} = Q_{VU} and l-invariance of Q, on random vectors of m
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Subspace> pieces = pp;
  pieces.insert(pieces.end(), np.begin(), np.end());
  double sym = 0.0, inv = 0.0;
  for (int t = 0; t < 4; ++t) {
    Vector x(d), y(d);
    for (int i = 0; i < d; ++i) {
      x(i) = nd(rng);
      y(i) = nd(rng);
    }
    x = f.m.projector() * x;
    y = f.m.projector() * y;
    for (const auto& u : pieces)
      for (const auto& v : pieces) {
        sym = std::max(sym, std::abs(q_form(u, v, x, y) - q_form(v, u, x, y)));
        for (int z = 0; z < f.l.dim(); ++z) {
          const Vector lz = f.l.orthonormal().col(z);
          inv = std::max(inv, std::abs(q_form(u, v, g.bracket(lz, x), y) + q_form(u, v, x, g.bracket(lz, y))));
        }
      }
  }
  rep.add("Q symmetry", sym);
  rep.add("Q l-invariance", inv);

  // vanishings for X in p and X' in n
  double van = 0.0;
  for (const auto& nj : np)
    for (const auto& pa : pp) van = std::max(van, detail::q_block_max(nj, pa, f.p, f.m));
  for (std::size_t i = 0; i < np.size(); ++i)
    for (std::size_t j = 0; j < np.size(); ++j)
      if (i != j) van = std::max(van, detail::q_block_max(np[i], np[j], f.p, f.m));
  for (const auto& pb : pp)
    for (const auto& pa : pp) van = std::max(van, detail::q_block_max(pb, pa, f.n, f.m));
  rep.add("Q vanishings", van);
  double pn = 0.0, nn = 0.0;
  for (std::size_t a = 0; a < pp.size(); ++a)
    for (std::size_t k = 0; k < np.size(); ++k) {
      const Matrix& nk = np[k].orthonormal();
      pn = std::max(pn, linalg::max_abs(nk.transpose() * (q_matrix(pp[a], np[k]) - phi * sc.casimirs.p_parts[a]) * nk));
    }
  for (std::size_t j = 0; j < np.size(); ++j) {
    const Matrix& po = f.p.orthonormal();
    if (po.cols() > 0) nn = std::max(nn, linalg::max_abs(po.transpose() * (q_matrix(np[j], np[j]) - phi * sc.casimirs.n_parts[j]) * po));
  }
  rep.add("Q_{p_a n_k} = Phi(C_{p_a}) on n_k", pn);
  rep.add("Q_{n_j n_j} = Phi(C_{n_j}) on p", nn);

  // skipped when some constant is not scalar
  double partition = 0.0;
  bool scalar = true;
  for (std::size_t a = 0; a < pp.size(); ++a) {
    if (!sc.gamma[a]) scalar = false;
    double total = sc.gamma[a].value_or(0.0);
    for (std::size_t j = 0; j < np.size(); ++j) {
      if (!sc.c_n_p[j][a]) scalar = false;
      total += sc.c_n_p[j][a].value_or(0.0);
    }
    partition = std::max(partition, std::abs(total - 1.0));
  }
  if (scalar) rep.add("gamma_a + sum_j c_{n_j,a} = 1", partition);
  rep.add("C_g = Id", linalg::max_abs(sc.casimirs.g - id));
  Matrix total = sc.casimirs.k;
  for (const auto& c : sc.casimirs.n_parts) total += c;
  rep.add("sum_j C_{n_j} + C_k = Id", linalg::max_abs(total - id));
  double ckl = 0.0;
  for (std::size_t j = 0; j < np.size(); ++j)
    if (sc.b[j] && sc.c_k_n[j] && sc.c_l_n[j]) ckl = std::max(ckl, std::abs(*sc.c_k_n[j] - *sc.c_l_n[j] - *sc.b[j]));
  rep.add("c_{k,j} = c_{l,j} + b^j", ckl);
  return rep;
}

}  // namespace einfib

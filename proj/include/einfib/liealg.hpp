#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "einfib/core.hpp"
#include "einfib/exact.hpp"
#include "einfib/linalg.hpp"

namespace einfib {

// Structure constants c(i,j,k): [e_i, e_j] = sum_k c(i,j,k) e_k.
template <class T>
class StructureConstants {
 public:
  struct Entry {
    int i, j, k;
    T value;
  };

  StructureConstants() = default;

  // Entries give [e_i, e_j]; the antisymmetric partner is implied.
  StructureConstants(int dim, const std::vector<Entry>& entries) : dim_(dim), c_(static_cast<std::size_t>(dim) * dim * dim, T(0)) {
    if (dim <= 0) throw InputError("algebra dimension must be positive");
    std::vector<bool> seen(c_.size(), false);
    for (const auto& e : entries) {
      if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= dim || e.j >= dim || e.k >= dim)
        throw InputError("structure constant index out of range: (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                         std::to_string(e.k) + ")");
      if (e.value == 0) continue;
      if (e.i == e.j) throw InputError("structure constants violate antisymmetry at [e_" + std::to_string(e.i) + ", e_" + std::to_string(e.i) + "]");
      const std::size_t a = index(e.i, e.j, e.k), b = index(e.j, e.i, e.k);
      const T neg = T(-e.value);
      if ((seen[a] && c_[a] != e.value) || (seen[b] && c_[b] != neg))
        throw InputError("conflicting structure constants for [e_" + std::to_string(e.i) + ", e_" + std::to_string(e.j) + "]");
      c_[a] = e.value;
      c_[b] = neg;
      seen[a] = seen[b] = true;
    }
    build_sparse();
  }

  int dim() const { return dim_; }
  const T& operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }

  // Canonical list with i < j.
  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    for (const auto& e : nz_)
      if (e.i < e.j) out.push_back(e);
    return out;
  }

  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    std::vector<T> out(dim_, T(0));
    for (const auto& e : nz_) {
      if (x[e.i] == 0 || y[e.j] == 0) continue;
      out[e.k] += x[e.i] * y[e.j] * e.value;
    }
    return out;
  }

  // (ad e_i)(k, j) = c(i, j, k)
  Dense<T> ad(int i) const {
    Dense<T> out(dim_, dim_);
    for (const auto& e : by_first_[i]) out(e.k, e.j) = e.value;
    return out;
  }

  Dense<T> killing() const {
    Dense<T> phi(dim_, dim_);
    for (int a = 0; a < dim_; ++a)
      for (int b = a; b < dim_; ++b) {
        T s(0);
        // tr(ad_a ad_b) = sum_{k,l} c(a,l,k) c(b,k,l)
        for (const auto& e : by_first_[a]) {
          const T& other = (*this)(b, e.k, e.j);
          if (other != 0) s += e.value * other;
        }
        phi(a, b) = s;
        phi(b, a) = s;
      }
    return phi;
  }

  // Largest |J(e_i,e_j,e_k)| over basis triples.
  T jacobi_residual() const {
    T worst(0);
    std::vector<T> acc(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        for (int k = j + 1; k < dim_; ++k) {
          std::fill(acc.begin(), acc.end(), T(0));
          accumulate_double_bracket(i, j, k, acc);
          accumulate_double_bracket(j, k, i, acc);
          accumulate_double_bracket(k, i, j, acc);
          for (const auto& v : acc) {
            const T a = abs_of(v);
            if (a > worst) worst = a;
          }
        }
    return worst;
  }

  // Largest entry of ad_z^T F + F ad_z over basis z.
  T invariance_residual(const Dense<T>& form) const {
    T worst(0);
    for (int z = 0; z < dim_; ++z) {
      const Dense<T> a = ad(z);
      const Dense<T> r = a.transpose() * form + form * a;
      const T m = max_abs(r);
      if (m > worst) worst = m;
    }
    return worst;
  }

  StructureConstants<double> to_double() const {
    std::vector<typename StructureConstants<double>::Entry> es;
    for (const auto& e : entries()) es.push_back({e.i, e.j, e.k, einfib::to_double(e.value)});
    return StructureConstants<double>(dim_, es);
  }

  const std::vector<Entry>& nonzeros() const { return nz_; }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
  }

  void build_sparse() {
    by_first_.assign(dim_, {});
    nz_.clear();
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
          const T& v = c_[index(i, j, k)];
          if (v != 0) {
            nz_.push_back({i, j, k, v});
            by_first_[i].push_back({i, j, k, v});
          }
        }
  }

  // acc += [[e_a, e_b], e_c]
  void accumulate_double_bracket(int a, int b, int c, std::vector<T>& acc) const {
    for (const auto& e : by_first_[a]) {
      if (e.j != b) continue;
      for (const auto& f : by_first_[e.k])
        if (f.j == c) acc[f.k] += e.value * f.value;
    }
  }

  int dim_ = 0;
  std::vector<T> c_;
  std::vector<Entry> nz_;
  std::vector<std::vector<Entry>> by_first_;
};

template <class T>
StructureConstants<T> direct_sum(const std::vector<StructureConstants<T>>& parts) {
  int dim = 0;
  std::vector<typename StructureConstants<T>::Entry> es;
  for (const auto& p : parts) {
    for (const auto& e : p.entries()) es.push_back({e.i + dim, e.j + dim, e.k + dim, e.value});
    dim += p.dim();
  }
  return StructureConstants<T>(dim, es);
}

// Real Lie algebra with a fixed basis. The invariant form defaults to
// B = -Killing; subalgebras carry the restriction of the ambient form.
class LieAlgebra {
 public:
  explicit LieAlgebra(StructureConstants<double> c, std::string name = "") : c_(std::move(c)), name_(std::move(name)) { init(std::nullopt); }

  LieAlgebra(const StructureConstants<Rational>& exact, std::string name)
      : c_(exact.to_double()), exact_(std::make_shared<StructureConstants<Rational>>(exact)), name_(std::move(name)) {
    init(std::nullopt);
  }

  LieAlgebra(StructureConstants<double> c, Matrix invariant_form, std::string name) : c_(std::move(c)), name_(std::move(name)) {
    init(std::move(invariant_form));
  }

  int dim() const { return c_.dim(); }
  const std::string& name() const { return name_; }
  const StructureConstants<double>& structure() const { return c_; }
  const StructureConstants<Rational>* exact() const { return exact_.get(); }

  const Matrix& ad(int i) const { return ad_[i]; }

  Matrix ad(const Vector& x) const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (x(i) != 0.0) out += x(i) * ad_[i];
    return out;
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out = Vector::Zero(dim());
    for (const auto& e : c_.nonzeros()) out(e.k) += x(e.i) * y(e.j) * e.value;
    return out;
  }

  const Matrix& killing() const { return killing_; }
  const Matrix& invariant_form() const { return form_; }

  double jacobi_residual() const { return c_.jacobi_residual(); }

  double invariance_residual(const Matrix& form) const {
    double worst = 0.0;
    for (int z = 0; z < dim(); ++z)
      worst = std::max(worst, linalg::max_abs(ad_[z].transpose() * form + form * ad_[z]));
    return worst;
  }

  double killing_invariance_residual() const { return invariance_residual(killing_); }

  // True when the invariant form is positive definite (compact case).
  bool form_positive_definite() const {
    Eigen::LLT<Matrix> llt(form_);
    return llt.info() == Eigen::Success;
  }

 private:
  void init(std::optional<Matrix> form) {
    const int d = dim();
    ad_.assign(d, Matrix::Zero(d, d));
    for (const auto& e : c_.nonzeros()) ad_[e.i](e.k, e.j) = e.value;
    killing_ = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        const double v = (ad_[a].array() * ad_[b].transpose().array()).sum();
        killing_(a, b) = killing_(b, a) = v;
      }
    form_ = form ? linalg::symmetrize(*form) : Matrix(-killing_);
  }

  StructureConstants<double> c_;
  std::shared_ptr<const StructureConstants<Rational>> exact_;
  std::string name_;
  std::vector<Matrix> ad_;
  Matrix killing_;
  Matrix form_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

inline AlgebraPtr make_algebra(const StructureConstants<Rational>& exact, std::string name) {
  auto g = std::make_shared<LieAlgebra>(exact, std::move(name));
  if (!g->form_positive_definite())
    throw InputError("algebra '" + g->name() + "' is not compact semisimple: -Killing form is not positive definite");
  return g;
}

// Linear subspace of an algebra, stored with its invariant-form Gram matrix,
// an orthonormal basis and the orthogonal projector. Immutable.
class Subspace {
 public:
  Subspace() = default;

  Subspace(AlgebraPtr algebra, Matrix basis, std::string label, double tol = kDefaultEpsilon)
      : algebra_(std::move(algebra)), basis_(std::move(basis)), label_(std::move(label)) {
    const int d = algebra_->dim();
    if (basis_.cols() == 0) basis_.resize(d, 0);
    if (basis_.rows() != d)
      throw InputError(label_ + ": basis vectors have length " + std::to_string(basis_.rows()) + ", expected " + std::to_string(d));
    if (linalg::rank(basis_, tol) != basis_.cols()) throw InputError(label_ + ": basis vectors are linearly dependent");
    const Matrix& form = algebra_->invariant_form();
    gram_ = linalg::symmetrize(basis_.transpose() * form * basis_);
    ortho_ = linalg::form_orthonormal(basis_, form, label_);
    projector_ = ortho_ * ortho_.transpose() * form;
  }

  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return algebra_->dim(); }
  const std::string& label() const { return label_; }
  const LieAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const Matrix& basis() const { return basis_; }
  const Matrix& orthonormal() const { return ortho_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& projector() const { return projector_; }
  double gram_condition() const { return linalg::condition_number(gram_); }

  Subspace relabeled(std::string label) const {
    Subspace s = *this;
    s.label_ = std::move(label);
    return s;
  }

  // Largest distance of the given columns from the subspace, relative to their size.
  double containment_residual(const Matrix& x) const {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const Vector v = x.col(j);
      worst = std::max(worst, (v - projector_ * v).norm() / std::max(1.0, v.norm()));
    }
    return worst;
  }

  // Index of the first column not contained in the subspace, or -1.
  int first_outside(const Matrix& x, double tol) const {
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (containment_residual(x.col(j)) > tol) return static_cast<int>(j);
    return -1;
  }

  bool contains(const Matrix& x, double tol) const { return containment_residual(x) <= tol; }

  bool same_span(const Subspace& o, double tol) const {
    return dim() == o.dim() && contains(o.basis_, tol) && o.contains(basis_, tol);
  }

  // Largest failure of [U, U] inside U.
  double closure_residual() const {
    double worst = 0.0;
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j)
        worst = std::max(worst, containment_residual(algebra_->bracket(ortho_.col(i), ortho_.col(j))));
    return worst;
  }

  // Largest failure of ad(h) U inside U over an orthonormal basis of h.
  double invariance_residual(const Subspace& h) const {
    double worst = 0.0;
    for (int i = 0; i < h.dim(); ++i) worst = std::max(worst, containment_residual(algebra_->ad(Vector(h.orthonormal().col(i))) * ortho_));
    return worst;
  }

 private:
  AlgebraPtr algebra_;
  Matrix basis_;
  Matrix ortho_;
  Matrix gram_;
  Matrix projector_;
  std::string label_;
};

inline Subspace whole(const AlgebraPtr& g, std::string label = "g") {
  return Subspace(g, Matrix::Identity(g->dim(), g->dim()), std::move(label));
}

// Orthogonal complement of `inner` inside `outer` with respect to the invariant form.
inline Subspace complement(const Subspace& inner, const Subspace& outer, std::string label, double tol = kDefaultEpsilon) {
  const Matrix& form = inner.algebra().invariant_form();
  const Matrix w = outer.orthonormal();
  if (inner.dim() == 0) return Subspace(inner.algebra_ptr(), w, std::move(label), tol);
  const Matrix constraints = inner.orthonormal().transpose() * form * w;
  return Subspace(inner.algebra_ptr(), w * linalg::nullspace(constraints, tol), std::move(label), tol);
}

inline Subspace span_of(const std::vector<Subspace>& parts, std::string label, double tol = kDefaultEpsilon) {
  if (parts.empty()) throw Error("span_of: no parts");
  std::vector<Matrix> blocks;
  for (const auto& p : parts) blocks.push_back(p.orthonormal());
  return Subspace(parts.front().algebra_ptr(), linalg::hcat(blocks, parts.front().ambient_dim()), std::move(label), tol);
}

// Coordinates of vectors of U in the basis orthonormal().
inline Matrix coordinates(const Subspace& u, const Matrix& x) {
  return u.orthonormal().transpose() * u.algebra().invariant_form() * x;
}

// The subalgebra U as an algebra in its own right, in the orthonormal basis of
// U, carrying the restricted invariant form (the identity in that basis).
inline AlgebraPtr subalgebra(const Subspace& u, std::string name, double tol = kDefaultEpsilon) {
  if (u.closure_residual() > tol) throw InputError(u.label() + " is not closed under the bracket");
  const int r = u.dim();
  const Matrix& v = u.orthonormal();
  std::vector<StructureConstants<double>::Entry> es;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      const Vector c = coordinates(u, u.algebra().bracket(v.col(i), v.col(j)));
      for (int k = 0; k < r; ++k)
        if (std::abs(c(k)) > 1e-15) es.push_back({i, j, k, c(k)});
    }
  return std::make_shared<LieAlgebra>(StructureConstants<double>(r, es), Matrix::Identity(r, r), std::move(name));
}

}  // namespace einfib

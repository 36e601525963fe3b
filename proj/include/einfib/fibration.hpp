#pragma once

#include <optional>
#include <string>
#include <vector>

#include "einfib/invariant_decomp.hpp"
#include "einfib/liealg.hpp"

namespace einfib {

struct FibrationOptions {
  double tol = kDefaultEpsilon;
  std::uint64_t seed = kDefaultSeed;
  std::string name;
  // Caller-chosen split of n (e.g. the isotypic split of the Kowalski family).
  std::optional<std::vector<Matrix>> n_parts;
};

// Homogeneous fibration F = K/L -> M = G/L -> N = G/K at the Lie algebra
// level: g = k + n, k = l + p, m = p + n, all orthogonal for B.
struct FibrationSetup {
  std::string name;
  AlgebraPtr algebra;
  Subspace g, k, l, p, n, m;
  ModuleDecomposition p_decomposition;  // under l
  ModuleDecomposition n_decomposition;  // under k
  double tol = kDefaultEpsilon;
  std::uint64_t seed = kDefaultSeed;

  const std::vector<Subspace>& p_parts() const { return p_decomposition.parts; }
  const std::vector<Subspace>& n_parts() const { return n_decomposition.parts; }
  int s() const { return static_cast<int>(p_parts().size()); }
  int n_count() const { return static_cast<int>(n_parts().size()); }
};

inline FibrationSetup make_fibration(AlgebraPtr algebra, const Matrix& k_basis, const Matrix& l_basis, const FibrationOptions& opt = {}) {
  const double tol = opt.tol;
  FibrationSetup f;
  f.name = opt.name;
  f.algebra = algebra;
  f.tol = tol;
  f.seed = opt.seed;
  f.g = whole(algebra);
  f.k = Subspace(algebra, k_basis, "k", tol);
  f.l = Subspace(algebra, l_basis, "l", tol);
  if (const int bad = f.k.first_outside(l_basis, tol); bad >= 0)
    throw InputError("l is not contained in k: l basis vector " + std::to_string(bad) + " lies outside k");
  if (double r = f.k.closure_residual(); r > tol) throw InputError("k is not a subalgebra (bracket residual " + std::to_string(r) + ")");
  if (double r = f.l.closure_residual(); r > tol) throw InputError("l is not a subalgebra (bracket residual " + std::to_string(r) + ")");
  if (f.k.dim() == algebra->dim()) throw InputError("k equals g: the base is a point");
  if (f.l.dim() == f.k.dim()) throw InputError("l equals k: the fiber is a point");
  f.p = complement(f.l, f.k, "p", tol);
  f.n = complement(f.k, f.g, "n", tol);
  f.m = complement(f.l, f.g, "m", tol);
  f.p_decomposition = decompose(f.l, f.p, tol, opt.seed);
  if (opt.n_parts) {
    std::vector<Subspace> parts;
    for (std::size_t j = 0; j < opt.n_parts->size(); ++j) parts.emplace_back(algebra, (*opt.n_parts)[j], "n_" + std::to_string(j + 1), tol);
    f.n_decomposition = decompose_with_override(f.k, f.n, parts, tol);
  } else {
    f.n_decomposition = decompose(f.k, f.n, tol, opt.seed);
  }
  return f;
}

struct PairFlag {
  int first, second;
  int hom_dim;
};

struct HypothesisVerdict {
  bool p_parts_inequivalent = true;  // irreducible, pairwise inequivalent under l
  bool n_parts_inequivalent = true;  // pairwise inequivalent under k
  bool n_parts_irreducible = true;   // each n_j irreducible under k
  bool p_n_disjoint = true;          // no l-irreducible piece of n equivalent to a p_a
  bool relaxed = false;              // a caller-chosen split of n is in use
  std::vector<PairFlag> p_offending, n_offending, pn_offending;
  std::vector<int> reducible_n_parts;
  bool holds() const { return p_parts_inequivalent && n_parts_inequivalent && n_parts_irreducible && p_n_disjoint; }
};

inline HypothesisVerdict check_hypothesis(const FibrationSetup& f) {
  HypothesisVerdict v;
  const double tol = f.tol;
  const auto& pp = f.p_parts();
  const auto& np = f.n_parts();
  for (std::size_t a = 0; a < pp.size(); ++a)
    for (std::size_t b = a + 1; b < pp.size(); ++b)
      if (int h = hom_dimension(f.l, pp[a], pp[b], tol); h > 0) {
        v.p_parts_inequivalent = false;
        v.p_offending.push_back({static_cast<int>(a), static_cast<int>(b), h});
      }
  for (std::size_t j = 0; j < np.size(); ++j) {
    if (f.n_decomposition.commutant_dims[j] > 1) {
      v.n_parts_irreducible = false;
      v.reducible_n_parts.push_back(static_cast<int>(j));
    }
    for (std::size_t i = j + 1; i < np.size(); ++i)
      if (int h = hom_dimension(f.k, np[j], np[i], tol); h > 0) {
        v.n_parts_inequivalent = false;
        v.n_offending.push_back({static_cast<int>(j), static_cast<int>(i), h});
      }
  }
  // Equivalence with pieces of n: Hom_l(p_a, n_j) detects any common constituent.
  for (std::size_t a = 0; a < pp.size(); ++a)
    for (std::size_t j = 0; j < np.size(); ++j)
      if (int h = hom_dimension(f.l, pp[a], np[j], tol); h > 0) {
        v.p_n_disjoint = false;
        v.pn_offending.push_back({static_cast<int>(a), static_cast<int>(j), h});
      }
  v.relaxed = f.n_decomposition.overridden && !v.n_parts_irreducible;
  return v;
}

}  // namespace einfib

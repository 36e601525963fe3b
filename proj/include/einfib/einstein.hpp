#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "einfib/casimir.hpp"
#include "einfib/fibration.hpp"
#include "einfib/ricci.hpp"

namespace einfib {

enum class SolutionKind { standard, binormal, general_adapted };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::standard: return "standard";
    case SolutionKind::binormal: return "binormal";
    case SolutionKind::general_adapted: return "general-adapted";
  }
  return "?";
}

inline SolutionKind parse_kind(const std::string& s) {
  if (s == "standard") return SolutionKind::standard;
  if (s == "binormal") return SolutionKind::binormal;
  if (s == "general-adapted") return SolutionKind::general_adapted;
  throw InputError("unknown solution kind '" + s + "'");
}

struct EinsteinSolution {
  AdaptedMetric metric;  // lambda_1 = 1
  double einstein_constant = 0.0;
  SolutionKind kind = SolutionKind::general_adapted;
  double defect = 0.0;  // oracle residual max |Ric - E g|
};

inline const char* kCertified = "certified-complete";
inline const char* kBestEffort = "best-effort";

struct SolutionSet {
  std::vector<EinsteinSolution> solutions;
  std::string completeness = kBestEffort;
  std::vector<std::string> notes;
};

inline bool all_close(const std::vector<double>& v, double tol) {
  for (double x : v)
    if (std::abs(x - v.front()) > tol * std::max(1.0, std::abs(v.front()))) return false;
  return true;
}

// Coefficients closer than this count as equal when naming the kind.
inline constexpr double kKindTolerance = 1e-7;

inline SolutionKind classify(const AdaptedMetric& g, double tol) {
  const bool lam = all_close(g.lambda, tol), mu = all_close(g.mu, tol);
  if (lam && mu && std::abs(g.lambda.front() - g.mu.front()) <= tol * g.lambda.front()) return SolutionKind::standard;
  if (lam && mu) return SolutionKind::binormal;
  return SolutionKind::general_adapted;
}

inline AdaptedMetric normalized(const AdaptedMetric& g) { return g.scaled(1.0 / g.lambda.front()); }

// Oracle verification of a candidate; fills E, defect and kind.
inline EinsteinSolution verify_solution(const RicciEngine& engine, const AdaptedMetric& g, double tol) {
  EinsteinSolution s;
  s.metric = normalized(g);
  const RicciTensor r = engine.nomizu_path(s.metric.coefficients());
  s.einstein_constant = r.einstein_constant();
  s.defect = r.einstein_defect();
  s.kind = classify(s.metric, kKindTolerance);
  return s;
}

inline void sort_solutions(std::vector<EinsteinSolution>& v) {
  std::stable_sort(v.begin(), v.end(), [](const EinsteinSolution& a, const EinsteinSolution& b) {
    if (std::abs(a.einstein_constant - b.einstein_constant) > 1e-9) return a.einstein_constant < b.einstein_constant;
    const auto ca = a.metric.coefficients(), cb = b.metric.coefficients();
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
  });
}

inline double metric_distance(const AdaptedMetric& a, const AdaptedMetric& b) {
  const auto ca = a.coefficients(), cb = b.coefficients();
  double d = 0.0;
  for (std::size_t i = 0; i < ca.size(); ++i) d = std::max(d, std::abs(ca[i] - cb[i]) / std::max(1.0, std::abs(ca[i])));
  return d;
}

// ---------------------------------------------------------------------------
// Necessary conditions

struct NecessaryConditions {
  struct Deviation {
    int part;          // index j of n_j
    double deviation;  // distance of C_p on n_j from a scalar
  };
  bool cond_i = false;
  std::vector<Deviation> cond_i_witness;  // filled exactly when cond_i fails
  std::vector<double> cond_i_lambda;      // a positive lambda when cond_i holds
  bool cond_ii_applicable = false;        // more than one n_j
  bool cond_ii = true;                    // a non-constant positive nu exists
  int cond_ii_nullity = 0;
  std::string cond_ii_witness;            // filled exactly when cond_ii fails
  std::vector<double> cond_ii_nu;         // a non-constant nu when cond_ii holds
  std::vector<std::string> notes;
};

// Alternating projections between span(basis) and {x >= 1}; returns a point in
// both when they meet.
inline std::optional<Vector> positive_point_in_span(const Matrix& basis, double tol) {
  if (basis.cols() == 0) return std::nullopt;
  const Matrix q = linalg::column_space(basis, tol);
  Vector x = Vector::Ones(basis.rows());
  for (int it = 0; it < 20000; ++it) {
    const Vector y = q * (q.transpose() * x);
    const Vector z = y.cwiseMax(1.0);
    if ((z - y).norm() < 1e-12 * std::max(1.0, y.norm())) return y;
    x = z;
  }
  return std::nullopt;
}

inline NecessaryConditions necessary_conditions(const FibrationSetup& f, const StructuralConstants& sc) {
  NecessaryConditions v;
  const double tol = f.tol;
  const int s = f.s(), n = f.n_count();
  // Linear constraints: traceless part of sum_a lambda_a C_{p_a} vanishes on every n_j.
  std::vector<Vector> rows;
  for (int j = 0; j < n; ++j) {
    const int r = f.n_parts()[j].dim();
    Matrix cols(r * r, s);
    for (int a = 0; a < s; ++a) {
      const Matrix& m = sc.casimirs.p_on_n[j][a];
      const Matrix dev = m - (m.trace() / r) * Matrix::Identity(r, r);
      cols.col(a) = Eigen::Map<const Vector>(dev.data(), r * r);
    }
    for (int i = 0; i < r * r; ++i) rows.push_back(cols.row(i).transpose());
  }
  Matrix a(static_cast<Eigen::Index>(rows.size()), s);
  for (std::size_t i = 0; i < rows.size(); ++i) a.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  const Matrix ker = linalg::nullspace(a, tol);
  if (auto w = positive_point_in_span(ker, tol)) {
    v.cond_i = true;
    const Vector lam = *w / (*w)(0);
    v.cond_i_lambda.assign(lam.data(), lam.data() + lam.size());
  }
  if (!v.cond_i) {
    for (int j = 0; j < n; ++j) {
      Matrix cp = Matrix::Zero(f.n_parts()[j].dim(), f.n_parts()[j].dim());
      for (int aa = 0; aa < s; ++aa) cp += sc.casimirs.p_on_n[j][aa];
      const ScalarFit fit = fit_scalar(cp);
      if (fit.deviation > tol) v.cond_i_witness.push_back({j, fit.deviation});
    }
    v.notes.push_back("no positive lambda makes sum_a lambda_a C_{p_a} scalar on every n_j");
  }

  v.cond_ii_applicable = n > 1;
  if (v.cond_ii_applicable) {
    // sum_j nu_j C_{n_j}(p) inside k  <=>  n-component of C_{n_j} p vanishes.
    const Matrix& beta = f.algebra->invariant_form();
    const Matrix pn = f.n.orthonormal().transpose() * beta;
    Matrix cols(f.n.dim() * f.p.dim(), n);
    for (int j = 0; j < n; ++j) {
      const Matrix m = pn * sc.casimirs.n_parts[j] * f.p.orthonormal();
      cols.col(j) = Eigen::Map<const Vector>(m.data(), m.size());
    }
    const Matrix nk = linalg::nullspace(cols, tol);
    v.cond_ii_nullity = static_cast<int>(nk.cols());
    v.cond_ii = v.cond_ii_nullity >= 2;
    if (v.cond_ii) {
      // a non-constant positive element near the all-ones vector
      Vector ones = Vector::Ones(n);
      const Matrix q = linalg::column_space(nk, tol);
      Vector other = Vector::Zero(n);
      for (Eigen::Index c = 0; c < q.cols(); ++c) {
        Vector t = q.col(c) - (q.col(c).dot(ones) / n) * ones;
        if (t.norm() > 1e-6) {
          other = t / t.norm();
          break;
        }
      }
      const Vector nu = ones + 0.25 * other;
      v.cond_ii_nu.assign(nu.data(), nu.data() + n);
    } else {
      v.cond_ii_witness = "solutions of sum_j nu_j C_{n_j}(p) in k form a space of dimension " + std::to_string(v.cond_ii_nullity) +
                          ": only constant nu";
      v.notes.push_back("the base metric of an Einstein adapted metric must be normal");
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Binormal metrics

struct Quadratic {
  double a = 0, b = 0, c = 0;
  double residual(double x) const { return a * x * x + b * x + c; }
  double scale(double x) const { return std::max({std::abs(a) * x * x, std::abs(b) * x, std::abs(c), 1e-300}); }
};

// Real roots; a discriminant negligible against b^2 and |4ac| counts as a double root.
inline std::vector<double> real_roots(const Quadratic& q, double tol) {
  const double big = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
  if (big == 0.0) return {};
  if (std::abs(q.a) <= tol * big) {
    if (std::abs(q.b) <= tol * big) return {};
    return {-q.c / q.b};
  }
  const double disc = q.b * q.b - 4.0 * q.a * q.c;
  const double ref = std::max(q.b * q.b, std::abs(4.0 * q.a * q.c));
  if (std::abs(disc) <= tol * ref) return {-q.b / (2.0 * q.a)};
  if (disc < 0) return {};
  const double sq = std::sqrt(disc);
  // numerically stable pair
  const double t = -0.5 * (q.b + std::copysign(sq, q.b));
  std::vector<double> r{t / q.a, q.c / t};
  std::sort(r.begin(), r.end());
  return r;
}

struct BinormalSystem {
  std::vector<Quadratic> equations;
  std::vector<std::string> labels;
};

inline BinormalSystem binormal_system(const FibrationSetup& f, const StructuralConstants& sc) {
  BinormalSystem sys;
  const int s = f.s(), n = f.n_count();
  auto ck = [&](int j) { return require(sc.c_k_n[j], "c_{k," + std::to_string(j + 1) + "}"); };
  auto cln = [&](int j) { return require(sc.c_l_n[j], "c_{l," + std::to_string(j + 1) + "}"); };
  auto gam = [&](int a) { return require(sc.gamma[a], "gamma_" + std::to_string(a + 1)); };
  auto clp = [&](int a) { return require(sc.c_l_p[a], "c_{l," + std::to_string(a + 1) + "}"); };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dk = ck(i) - ck(j), dl = cln(i) - cln(j);
      sys.equations.push_back({0.0, -dk, dk - dl});  // dk (1 - X) = dl
      sys.labels.push_back("horizontal difference (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  for (int a = 0; a < s; ++a)
    for (int b = a + 1; b < s; ++b) {
      const double dk = gam(a) - gam(b), dl = clp(a) - clp(b);
      sys.equations.push_back({2.0 * dl + dk, 0.0, -dk});
      sys.labels.push_back("vertical difference (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
    }
  for (int a = 0; a < s; ++a)
    for (int j = 0; j < n; ++j) {
      const double bj = require(sc.b[j], "b^" + std::to_string(j + 1));
      sys.equations.push_back({gam(a) + 2.0 * clp(a), -(1.0 + 2.0 * ck(j)), 1.0 - gam(a) + 2.0 * bj});
      sys.labels.push_back("main (" + std::to_string(a + 1) + "," + std::to_string(j + 1) + ")");
    }
  return sys;
}

inline constexpr double kEquationTolerance = 1e-8;

// Positive X solving every equation of the system.
inline std::vector<double> solve_binormal_system(const BinormalSystem& sys, double tol) {
  std::vector<double> candidates;
  bool seeded = false;
  for (const auto& q : sys.equations) {
    const double big = std::max({std::abs(q.a), std::abs(q.b), std::abs(q.c)});
    if (big <= tol) continue;  // 0 = 0
    candidates = real_roots(q, tol);
    seeded = true;
    break;
  }
  if (!seeded) throw NumericalError("binormal system is vacuous");
  std::vector<double> out;
  for (double x : candidates) {
    if (!(x > 0.0)) continue;
    bool ok = true;
    for (const auto& q : sys.equations)
      if (std::abs(q.residual(x)) > kEquationTolerance * q.scale(x)) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

inline SolutionSet solve_binormal(const FibrationSetup& f, const StructuralConstants& sc, const RicciEngine& engine) {
  SolutionSet set;
  set.completeness = kCertified;
  for (int j = 0; j < f.n_count(); ++j)
    if (!sc.b[j]) {
      set.notes.push_back("C_p is not scalar on n_" + std::to_string(j + 1) + ": no binormal Einstein metric");
      return set;
    }
  const auto xs = solve_binormal_system(binormal_system(f, sc), f.tol);
  for (double x : xs) {
    AdaptedMetric g{std::vector<double>(f.s(), 1.0), std::vector<double>(f.n_count(), x)};
    EinsteinSolution sol = verify_solution(engine, g, f.tol);
    if (sol.defect >= 1e-7) throw NumericalError("binormal candidate X=" + std::to_string(x) + " fails oracle verification");
    set.solutions.push_back(sol);
  }
  sort_solutions(set.solutions);
  return set;
}

// Closed form for isotropy irreducible fiber and base (s = n = 1).
struct IrreducibleClosedForm {
  double delta = 0.0;
  std::vector<double> x;  // positive roots
};

inline IrreducibleClosedForm irreducible_closed_form(double gamma, double c_l_p, double c_k_n, double b) {
  IrreducibleClosedForm out;
  const double lead = gamma + 2.0 * c_l_p, mid = 1.0 + 2.0 * c_k_n;
  const double c = 1.0 - gamma + 2.0 * b;
  out.delta = mid * mid - 4.0 * lead * c;
  if (out.delta < 0.0) return out;
  // lead vanishes when p is abelian and central in k: one linear root
  if (std::abs(lead) <= 1e-12 * mid) {
    if (c / mid > 0.0) out.x.push_back(c / mid);
    return out;
  }
  for (double sign : {-1.0, 1.0}) {
    const double x = (mid + sign * std::sqrt(out.delta)) / (2.0 * lead);
    if (x > 0.0 && (out.x.empty() || std::abs(x - out.x.back()) > 1e-12)) out.x.push_back(x);
  }
  return out;
}

// Circle fiber over an isotropy irreducible base of dimension m.
inline double circle_bundle_x(int m, double c_k_n) { return (2.0 + m) / (m * (1.0 + 2.0 * c_k_n)); }

inline Rational circle_bundle_x_exact(int m, const Rational& c_k_n) {
  return Rational(Rational(2 + m) / (Rational(m) * (Rational(1) + 2 * c_k_n)));
}

struct RationalityCheck {
  bool rational = false;
  long numerator = 0, denominator = 1;
  double error = 0.0;
};

// Best rational approximation with denominator <= max_den, by continued fractions.
inline RationalityCheck rational_fit(double x, long max_den = 10000, double tol = 1e-10) {
  RationalityCheck out;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(r);
    if (std::abs(fl) > 1e12) break;
    const long a = static_cast<long>(fl);
    const long h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    out.numerator = h1;
    out.denominator = k1;
    out.error = std::abs(x - static_cast<double>(h1) / static_cast<double>(k1));
    if (out.error <= tol * std::max(1.0, std::abs(x))) {
      out.rational = true;
      return out;
    }
    const double frac = r - fl;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  return out;
}

inline bool perfect_square(long v) {
  if (v < 0) return false;
  const long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
  return r * r == v;
}

struct SymmetricAlphaResult {
  double alpha = 0.0;
  double alpha_deviation = 0.0;
  double x = 0.0;                  // 1 / sqrt(2 alpha + 1)
  RationalityCheck alpha_fit;      // alpha as a small-denominator fraction
  bool sqrt_rational = false;      // sqrt(2 alpha + 1) rational under that fit
  bool casimir_relation = false;   // c_{l,j} = (1 - x)(c_{k,j} + 1/2) for all j
  bool cp_scalar = false;
  std::vector<EinsteinSolution> solutions;
  std::vector<std::string> notes;
};

// Binormal route for non-irreducible fibers with Phi o C_l = alpha Phi_k on p.
inline SymmetricAlphaResult solve_binormal_symmetric_alpha(const FibrationSetup& f, const StructuralConstants& sc, const RicciEngine& engine) {
  SymmetricAlphaResult out;
  const int s = f.s();
  if (s < 2) throw InputError("declined: the fiber is isotropy irreducible (single p-part)");
  bool distinct = false;
  for (int a = 1; a < s; ++a)
    if (std::abs(require(sc.gamma[a], "gamma") - require(sc.gamma[0], "gamma")) > 1e3 * f.tol) distinct = true;
  if (!distinct) throw InputError("declined: all gamma_a coincide");
  // fit Phi(C_l ., .) = alpha Phi_k on p
  const Matrix& wo = f.p.orthonormal();
  const Matrix sl = linalg::symmetrize(wo.transpose() * f.algebra->killing() * sc.casimirs.l * wo);
  const Matrix sk = linalg::symmetrize(wo.transpose() * q_matrix(f.k, f.k) * wo);
  out.alpha = (sl * sk.inverse()).trace() / static_cast<double>(f.p.dim());
  out.alpha_deviation = (sl - out.alpha * sk).norm();
  if (out.alpha_deviation > f.tol) throw InputError("Phi o C_l is not proportional to Phi_k on p");
  out.x = 1.0 / std::sqrt(2.0 * out.alpha + 1.0);
  out.alpha_fit = rational_fit(out.alpha);
  if (out.alpha_fit.rational) {
    const long num = 2 * out.alpha_fit.numerator + out.alpha_fit.denominator, den = out.alpha_fit.denominator;
    out.sqrt_rational = perfect_square(num) && perfect_square(den);
  }
  out.cp_scalar = true;
  for (int j = 0; j < f.n_count(); ++j)
    if (!sc.b[j]) out.cp_scalar = false;
  out.casimir_relation = true;
  for (int j = 0; j < f.n_count(); ++j) {
    if (!sc.c_l_n[j] || !sc.c_k_n[j]) {
      out.casimir_relation = false;
      out.notes.push_back("C_l or C_k is not scalar on n_" + std::to_string(j + 1));
      continue;
    }
    const double rhs = (1.0 - out.x) * (*sc.c_k_n[j] + 0.5);
    if (std::abs(*sc.c_l_n[j] - rhs) > kEquationTolerance) out.casimir_relation = false;
  }
  if (!out.sqrt_rational) out.notes.push_back("sqrt(2 alpha + 1) is not rational: no binormal Einstein metric on this route");
  if (!out.casimir_relation) out.notes.push_back("Casimir relation between C_l and C_k on n fails");
  if (out.cp_scalar && out.casimir_relation) {
    AdaptedMetric g{std::vector<double>(s, 1.0), std::vector<double>(f.n_count(), out.x)};
    EinsteinSolution sol = verify_solution(engine, g, f.tol);
    if (sol.defect < 1e-7) out.solutions.push_back(sol);
  }
  return out;
}

// ---------------------------------------------------------------------------
// General adapted metrics

struct AdaptedSolveOptions {
  std::vector<double> grid{0.25, 0.5, 1.0, 2.0, 4.0};
  int max_starts = 625;
  int max_iterations = 200;
  double residual_tol = 1e-12;
  std::uint64_t seed = kDefaultSeed;
};

// Einstein residual of an adapted metric from the block formulas (or the
// Q-form path when some constant is not scalar): the entries of Ric - E g in a
// metric-orthonormal basis, E = trace / dim.
class AdaptedResidual {
 public:
  AdaptedResidual(const FibrationSetup& f, const StructuralConstants& sc, const RicciEngine& engine) : f_(f), sc_(sc), engine_(engine) {
    use_formula_ = true;
    try {
      (void)ricci_formula(f, sc, AdaptedMetric::standard(f));
    } catch (const NumericalError&) {
      use_formula_ = false;
    }
  }

  bool uses_block_formulas() const { return use_formula_; }
  int unknowns() const { return f_.s() - 1 + f_.n_count(); }

  AdaptedMetric metric(const Vector& theta) const {
    AdaptedMetric g{std::vector<double>(f_.s(), 1.0), std::vector<double>(f_.n_count(), 1.0)};
    for (int a = 1; a < f_.s(); ++a) g.lambda[a] = std::exp(theta(a - 1));
    for (int j = 0; j < f_.n_count(); ++j) g.mu[j] = std::exp(theta(f_.s() - 1 + j));
    return g;
  }

  Vector operator()(const Vector& theta) const {
    const AdaptedMetric g = metric(theta);
    const RicciTensor r = use_formula_ ? ricci_formula(f_, sc_, g) : engine_.q_path(g.coefficients());
    const Matrix o = r.orthonormal_form();
    const double e = o.trace() / static_cast<double>(o.rows());
    Vector out(o.rows() * (o.rows() + 1) / 2);
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < o.rows(); ++i)
      for (Eigen::Index j = i; j < o.cols(); ++j) out(at++) = o(i, j) - (i == j ? e : 0.0);
    return out;
  }

 private:
  const FibrationSetup& f_;
  const StructuralConstants& sc_;
  const RicciEngine& engine_;
  bool use_formula_ = true;
};

// Levenberg-Marquardt on the log-parametrized positive cone.
inline std::optional<Vector> levenberg_marquardt(const std::function<Vector(const Vector&)>& fn, Vector x, int max_iter, double tol) {
  double damping = 1e-3;
  Vector r = fn(x);
  double cost = r.squaredNorm();
  // Keeps iterating past the tolerance until no step improves the residual,
  // which pulls slowly converging (double-root) candidates onto the root.
  for (int it = 0; it < max_iter; ++it) {
    Matrix jac(r.size(), x.size());
    for (Eigen::Index c = 0; c < x.size(); ++c) {
      const double h = 1e-6;
      Vector xp = x, xm = x;
      xp(c) += h;
      xm(c) -= h;
      jac.col(c) = (fn(xp) - fn(xm)) / (2.0 * h);
    }
    const Matrix jtj = jac.transpose() * jac;
    const Vector g = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Matrix a = jtj;
      a.diagonal() += damping * (jtj.diagonal().array() + 1e-12).matrix();
      const Vector step = a.ldlt().solve(-g);
      if (!step.allFinite()) break;
      const Vector xn = x + step;
      if ((xn.array().abs() > 30.0).any()) {
        damping *= 10.0;
        continue;
      }
      const Vector rn = fn(xn);
      const double cn = rn.squaredNorm();
      if (cn < cost) {
        if (step.norm() < 1e-15 * (1.0 + x.norm())) break;
        x = xn;
        r = rn;
        cost = cn;
        damping = std::max(damping / 10.0, 1e-15);
        improved = true;
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
  }
  if (r.cwiseAbs().maxCoeff() < tol) return x;
  return std::nullopt;
}

inline std::vector<Vector> start_points(int dims, const AdaptedSolveOptions& opt) {
  std::vector<Vector> out;
  if (dims == 0) {
    out.emplace_back(0);
    return out;
  }
  const int g = static_cast<int>(opt.grid.size());
  double total = std::pow(static_cast<double>(g), dims);
  if (total <= opt.max_starts) {
    std::vector<int> idx(dims, 0);
    for (;;) {
      Vector v(dims);
      for (int i = 0; i < dims; ++i) v(i) = std::log(opt.grid[idx[i]]);
      out.push_back(v);
      int i = 0;
      while (i < dims && ++idx[i] == g) idx[i++] = 0;
      if (i == dims) break;
    }
    return out;
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(std::log(opt.grid.front()), std::log(opt.grid.back()));
  for (int k = 0; k < opt.max_starts; ++k) {
    Vector v(dims);
    for (int i = 0; i < dims; ++i) v(i) = u(rng);
    out.push_back(v);
  }
  return out;
}

inline SolutionSet solve_adapted(const FibrationSetup& f, const StructuralConstants& sc, const RicciEngine& engine,
                                 const AdaptedSolveOptions& opt = {}) {
  SolutionSet set;
  const AdaptedResidual res(f, sc, engine);
  if (!res.uses_block_formulas()) set.notes.push_back("some structural constant is not scalar: residuals use the Q-form Ricci path");
  const auto fn = [&](const Vector& t) { return res(t); };
  for (const Vector& start : start_points(res.unknowns(), opt)) {
    const auto sol = levenberg_marquardt(fn, start, opt.max_iterations, opt.residual_tol);
    if (!sol) continue;
    const AdaptedMetric g = res.metric(*sol);
    bool dup = false;
    for (const auto& s : set.solutions)
      if (metric_distance(s.metric, g) <= 1e-6) dup = true;
    if (dup) continue;
    EinsteinSolution s = verify_solution(engine, g, f.tol);
    if (s.defect >= 1e-7) {
      set.notes.push_back("discarded a converged candidate failing oracle verification");
      continue;
    }
    set.solutions.push_back(s);
  }
  sort_solutions(set.solutions);
  if (f.s() == 1 && f.n_count() == 1) set.completeness = kCertified;  // adapted = binormal, finite quadratic
  return set;
}

// ---------------------------------------------------------------------------
// Einstein fiber and base

// b^j(lambda): scalar of sum_a lambda_a C_{p_a} on n_j.
inline std::vector<double> horizontal_casimir_scalars(const FibrationSetup& f, const StructuralConstants& sc, const std::vector<double>& lambda) {
  std::vector<double> out;
  for (int j = 0; j < f.n_count(); ++j) {
    const ScalarFit fit = fit_scalar(weighted_p_casimir(sc, lambda, j));
    if (fit.deviation > f.tol) throw NumericalError("sum_a lambda_a C_{p_a} is not scalar on n_" + std::to_string(j + 1));
    out.push_back(fit.value);
  }
  return out;
}

struct FiberBaseRatios {
  std::vector<double> mu_ratio;      // mu_j / mu_1
  std::vector<double> lambda_ratio;  // lambda_a / lambda_1
};

// Ratios forced on an Einstein adapted metric with Einstein fiber and base.
inline FiberBaseRatios fiber_base_ratios(const FibrationSetup& f, const StructuralConstants& sc, const std::vector<double>& lambda) {
  const auto b = horizontal_casimir_scalars(f, sc, lambda);
  FiberBaseRatios r;
  for (int j = 0; j < f.n_count(); ++j) r.mu_ratio.push_back(std::sqrt(b[j] / b[0]));
  auto weight = [&](int a) {
    double w = 0.0;
    for (int j = 0; j < f.n_count(); ++j) w += require(sc.c_n_p[j][a], "c_{n_j,a}") / b[j];
    return w;
  };
  for (int a = 0; a < f.s(); ++a) r.lambda_ratio.push_back(weight(0) / weight(a));
  return r;
}

// The adapted metric determined by the three Einstein constants E, E_F, E_N;
// b^j is evaluated at `lambda`.
inline AdaptedMetric einstein_fiber_base_relations(const FibrationSetup& f, const StructuralConstants& sc, double e, double e_fiber,
                                                   double e_base, const std::vector<double>& lambda) {
  if (std::abs(e_base - e) <= f.tol * std::max(1.0, std::abs(e))) throw InputError("E equals E_N: the relations do not determine the metric");
  const auto b = horizontal_casimir_scalars(f, sc, lambda);
  AdaptedMetric g;
  for (int j = 0; j < f.n_count(); ++j) {
    const double rad = b[j] / (2.0 * (e_base - e));
    if (!(rad > 0.0)) throw InputError("negative radicand for mu_" + std::to_string(j + 1) + ": no metric");
    g.mu.push_back(std::sqrt(rad));
  }
  for (int a = 0; a < f.s(); ++a) {
    double w = 0.0;
    for (int j = 0; j < f.n_count(); ++j) w += require(sc.c_n_p[j][a], "c_{n_j,a}") / b[j];
    if (w == 0.0) throw InputError("vanishing denominator for lambda_" + std::to_string(a + 1));
    const double lam = 2.0 * (e - e_fiber) / (e_base - e) / w;
    if (!(lam > 0.0)) throw InputError("non-positive lambda_" + std::to_string(a + 1) + ": no metric");
    g.lambda.push_back(lam);
  }
  return g;
}

// Einstein constants of the fiber and base metrics from the block formulas;
// nullopt where the projection is not Einstein.
struct ProjectionEinstein {
  std::optional<double> fiber, base;
  double fiber_spread = 0.0, base_spread = 0.0;
};

inline ProjectionEinstein projection_einstein(const FibrationSetup& f, const StructuralConstants& sc, const AdaptedMetric& g, double tol) {
  ProjectionEinstein out;
  std::vector<double> ef, eb;
  for (int a = 0; a < f.s(); ++a) ef.push_back(fiber_coefficient(sc, g.lambda, a) / g.lambda[a]);
  for (int k = 0; k < f.n_count(); ++k) eb.push_back(base_coefficient(sc, g.mu, k) / g.mu[k]);
  auto spread = [](const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()); };
  out.fiber_spread = spread(ef);
  out.base_spread = spread(eb);
  if (out.fiber_spread <= tol) out.fiber = ef.front();
  if (out.base_spread <= tol) out.base = eb.front();
  return out;
}

}  // namespace einfib

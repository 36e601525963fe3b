#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "einfib/einstein.hpp"
#include "einfib/exact.hpp"
#include "einfib/fibration.hpp"
#include "einfib/liealg.hpp"

namespace einfib::catalog {

// Complex matrix with rational real and imaginary parts.
struct ComplexMatrix {
  RationalMatrix re, im;

  explicit ComplexMatrix(int n = 0) : re(n, n), im(n, n) {}
  int size() const { return re.rows(); }

  ComplexMatrix operator*(const ComplexMatrix& o) const {
    ComplexMatrix out;
    out.re = re * o.re - im * o.im;
    out.im = re * o.im + im * o.re;
    return out;
  }
  ComplexMatrix operator-(const ComplexMatrix& o) const {
    ComplexMatrix out;
    out.re = re - o.re;
    out.im = im - o.im;
    return out;
  }
};

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

// e_ij - e_ji
inline ComplexMatrix real_skew(int n, int i, int j) {
  ComplexMatrix m(n);
  m.re(i, j) = 1;
  m.re(j, i) = -1;
  return m;
}

// i (e_ij + e_ji), or i e_ii
inline ComplexMatrix imag_sym(int n, int i, int j) {
  ComplexMatrix m(n);
  m.im(i, j) = 1;
  m.im(j, i) = 1;
  if (i == j) m.im(i, i) = 1;
  return m;
}

// i (e_ii - e_jj)
inline ComplexMatrix imag_diag(int n, int i, int j) {
  ComplexMatrix m(n);
  m.im(i, i) = 1;
  m.im(j, j) = -1;
  return m;
}

// Block embedding of an n x n matrix at offset `at` in size N.
inline ComplexMatrix embed(const ComplexMatrix& a, int size, int at) {
  ComplexMatrix m(size);
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      m.re(at + i, at + j) = a.re(i, j);
      m.im(at + i, at + j) = a.im(i, j);
    }
  return m;
}

inline std::vector<ComplexMatrix> su_basis(int n) {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(real_skew(n, i, j));
      out.push_back(imag_sym(n, i, j));
    }
  for (int i = 0; i + 1 < n; ++i) out.push_back(imag_diag(n, i, i + 1));
  return out;
}

inline std::vector<ComplexMatrix> so_basis(int n) {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back(real_skew(n, i, j));
  return out;
}

// sp(n) inside su(2n): [[A, B], [-conj(B), conj(A)]], A skew-Hermitian, B symmetric.
inline ComplexMatrix sp_embed_a(const ComplexMatrix& a) {
  const int n = a.size();
  ComplexMatrix m(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.re(i, j) = a.re(i, j);
      m.im(i, j) = a.im(i, j);
      m.re(n + i, n + j) = a.re(i, j);
      m.im(n + i, n + j) = -a.im(i, j);
    }
  return m;
}

inline ComplexMatrix sp_embed_b(const ComplexMatrix& b) {
  const int n = b.size();
  ComplexMatrix m(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.re(i, n + j) = b.re(i, j);
      m.im(i, n + j) = b.im(i, j);
      m.re(n + i, j) = -b.re(i, j);
      m.im(n + i, j) = b.im(i, j);
    }
  return m;
}

inline std::vector<ComplexMatrix> u_basis(int n) {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      out.push_back(real_skew(n, i, j));
      out.push_back(imag_sym(n, i, j));
    }
  for (int i = 0; i < n; ++i) out.push_back(imag_sym(n, i, i));
  return out;
}

inline std::vector<ComplexMatrix> sp_basis(int n) {
  std::vector<ComplexMatrix> out;
  for (const auto& a : u_basis(n)) out.push_back(sp_embed_a(a));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ComplexMatrix re(n), im(n);
      re.re(i, j) = re.re(j, i) = 1;
      im.im(i, j) = im.im(j, i) = 1;
      out.push_back(sp_embed_b(re));
      out.push_back(sp_embed_b(im));
    }
  return out;
}

// u(n) realized in so(2n): A + iB -> [[A, -B], [B, A]].
inline ComplexMatrix realify(const ComplexMatrix& z) {
  const int n = z.size();
  ComplexMatrix m(2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.re(i, j) = z.re(i, j);
      m.re(n + i, n + j) = z.re(i, j);
      m.re(i, n + j) = -z.im(i, j);
      m.re(n + i, j) = z.im(i, j);
    }
  return m;
}

inline RationalMatrix flatten(const std::vector<ComplexMatrix>& ms) {
  if (ms.empty()) return RationalMatrix(0, 0);
  const int n = ms.front().size();
  RationalMatrix out(2 * n * n, static_cast<int>(ms.size()));
  for (std::size_t c = 0; c < ms.size(); ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out(i * n + j, static_cast<int>(c)) = ms[c].re(i, j);
        out(n * n + i * n + j, static_cast<int>(c)) = ms[c].im(i, j);
      }
  return out;
}

// A matrix Lie algebra with exact structure constants on the given basis.
struct MatrixAlgebra {
  std::string name;
  std::vector<ComplexMatrix> basis;
  StructureConstants<Rational> exact;
  AlgebraPtr algebra;

  int dim() const { return static_cast<int>(basis.size()); }

  // Exact coordinates of matrices lying in the span of the basis.
  RationalMatrix exact_coordinates(const std::vector<ComplexMatrix>& ms) const {
    if (ms.empty()) return RationalMatrix(dim(), 0);
    auto x = einfib::solve(flatten(basis), flatten(ms));
    if (!x) throw InputError("matrix outside " + name);
    return *x;
  }

  Matrix coordinates(const std::vector<ComplexMatrix>& ms) const {
    if (ms.empty()) return Matrix(dim(), 0);
    return exact_coordinates(ms).to_matrix();
  }
};

inline MatrixAlgebra matrix_algebra(std::string name, std::vector<ComplexMatrix> basis) {
  MatrixAlgebra out;
  out.name = std::move(name);
  out.basis = std::move(basis);
  const int d = out.dim();
  std::vector<ComplexMatrix> brackets;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) brackets.push_back(commutator(out.basis[i], out.basis[j]));
  const RationalMatrix c = out.exact_coordinates(brackets);
  std::vector<StructureConstants<Rational>::Entry> es;
  int col = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++col)
      for (int k = 0; k < d; ++k)
        if (c(k, col) != 0) es.push_back({i, j, k, c(k, col)});
  out.exact = StructureConstants<Rational>(d, es);
  out.algebra = make_algebra(out.exact, out.name);
  return out;
}

struct ClassicalDescriptor {
  std::string family;  // su, so, sp
  int rank = 0;        // the n in su(n), so(n), sp(n)

  std::string name() const { return family + std::to_string(rank); }
};

inline ClassicalDescriptor parse_descriptor(const std::string& text) {
  std::size_t split = 0;
  while (split < text.size() && std::isalpha(static_cast<unsigned char>(text[split]))) ++split;
  ClassicalDescriptor d;
  d.family = text.substr(0, split);
  std::string digits = text.substr(split);
  if (!digits.empty() && digits.front() == '(' && digits.back() == ')') digits = digits.substr(1, digits.size() - 2);
  if (d.family == "e" || d.family == "f" || d.family == "g")
    throw InputError("exceptional algebra '" + text + "' is not supported");
  if (d.family != "su" && d.family != "so" && d.family != "sp") throw InputError("unsupported algebra descriptor '" + text + "'");
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw InputError("missing rank in algebra descriptor '" + text + "'");
  d.rank = std::stoi(digits);
  return d;
}

inline void check_descriptor(const ClassicalDescriptor& d) {
  const int min = d.family == "su" ? 2 : d.family == "so" ? 3 : 1;
  if (d.rank < min) throw InputError(d.family + "(" + std::to_string(d.rank) + ") is not a compact simple algebra");
  if (d.family == "so" && d.rank == 4) throw InputError("so(4) is not simple");
  if (d.rank > 12) throw InputError("rank " + std::to_string(d.rank) + " is too large");
}

inline MatrixAlgebra classical_model(const ClassicalDescriptor& d) {
  if (d.family == "su") return matrix_algebra(d.name(), su_basis(d.rank));
  if (d.family == "so") return matrix_algebra(d.name(), so_basis(d.rank));
  return matrix_algebra(d.name(), sp_basis(d.rank));
}

inline AlgebraPtr build_classical(const ClassicalDescriptor& d) {
  check_descriptor(d);
  return classical_model(d).algebra;
}

inline AlgebraPtr build_classical(const std::string& descriptor) { return build_classical(parse_descriptor(descriptor)); }

inline int classical_dimension(const ClassicalDescriptor& d) {
  if (d.family == "su") return d.rank * d.rank - 1;
  if (d.family == "so") return d.rank * (d.rank - 1) / 2;
  return d.rank * (2 * d.rank + 1);
}

// ---------------------------------------------------------------------------
// Kowalski spaces G0^n / diag -> G0^p / diag x G0^q / diag

struct KowalskiSpec {
  std::string g0 = "su2";
  int n = 0, p = 0, q = 0;
};

inline void validate(const KowalskiSpec& s) {
  if (s.p + s.q != s.n) throw InputError("kowalski: p + q must equal n");
  if (s.p < 2 || s.p > s.q || s.q > s.n - 2) throw InputError("kowalski: need 2 <= p <= q <= n - 2");
  check_descriptor(parse_descriptor(s.g0));
}

inline KowalskiSpec kowalski_spec(const std::string& g0, int n, int p) {
  KowalskiSpec s{g0, n, p, n - p};
  validate(s);
  return s;
}

inline FibrationSetup build_kowalski(const KowalskiSpec& spec, double tol = kDefaultEpsilon) {
  validate(spec);
  const auto base = classical_model(parse_descriptor(spec.g0));
  const int d0 = base.dim(), n = spec.n, p = spec.p;
  const auto algebra = make_algebra(direct_sum(std::vector<StructureConstants<Rational>>(n, base.exact)),
                                    spec.g0 + "^" + std::to_string(n));
  const int d = d0 * n;
  auto diag = [&](int from, int to) {
    Matrix m = Matrix::Zero(d, d0);
    for (int e = 0; e < d0; ++e)
      for (int i = from; i < to; ++i) m(i * d0 + e, e) = 1.0;
    return m;
  };
  auto differences = [&](int from, int to) {
    Matrix m = Matrix::Zero(d, d0 * (to - from - 1));
    int col = 0;
    for (int i = from; i + 1 < to; ++i)
      for (int e = 0; e < d0; ++e, ++col) {
        m(i * d0 + e, col) = 1.0;
        m((i + 1) * d0 + e, col) = -1.0;
      }
    return m;
  };
  FibrationOptions opt;
  opt.tol = tol;
  opt.name = "kowalski(" + spec.g0 + ", n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")";
  opt.n_parts = std::vector<Matrix>{differences(0, p), differences(p, n)};
  return make_fibration(algebra, linalg::hcat(diag(0, p), diag(p, n)), diag(0, n), opt);
}

// Structural constants in closed form for the Kowalski family.
struct KowalskiConstants {
  double c_l, b1, b2, c_k1, c_k2, gamma, c_n1_p, c_n2_p;
};

inline KowalskiConstants kowalski_constants(const KowalskiSpec& s) {
  const double n = s.n, p = s.p, q = s.q;
  return {1.0 / n, q / (n * p), p / (n * q), 1.0 / p, 1.0 / q, (p * p + q * q) / (n * p * q), (p - 1) * q / (p * n), (q - 1) * p / (q * n)};
}

struct KowalskiCubic {
  int n = 0, p = 0, q = 0;
  std::array<long, 4> coeffs{};  // t(Z) = c0 Z^3 + c1 Z^2 + c2 Z + c3
  std::vector<std::complex<double>> roots;
  double lower = 0.0, upper = 0.0;  // open interval holding the real root
  std::optional<double> root;       // real root in (lower, upper)
  std::optional<double> x2;         // back-substituted X_2 at that root
  long delta = 0;                   // discriminant of dt/dZ over 16
  long delta_closed = 0;            // same, expanded in p and q
  long t_at_one = 0;
  long t_at_one_closed = 0;

  double operator()(double z) const { return ((coeffs[0] * z + coeffs[1]) * z + coeffs[2]) * z + coeffs[3]; }
};

inline double kowalski_x2(int n, int p, int q, double x1) {
  const double rad = (-q * q * (p + 1.0) * x1 * x1 + n * q * (p + 2.0) * x1 - n * n) / (p * p * (q - 1.0));
  return rad > 0 ? std::sqrt(rad) : std::nan("");
}

inline KowalskiCubic kowalski_cubic(const KowalskiSpec& spec) {
  validate(spec);
  KowalskiCubic c;
  const long n = spec.n, p = spec.p, q = spec.q;
  c.n = spec.n;
  c.p = spec.p;
  c.q = spec.q;
  c.coeffs = {4 * q * q, -4 * q * (n + p * q + 2), n * (q * (q + 2) * (p + 1) + n + 8), -(q + 3) * n * n};
  c.delta = 4 * (n + p * q + 2) * (n + p * q + 2) - 3 * n * (q * (q + 2) * (p + 1) + n + 8);
  c.delta_closed = (q + 1) * (q + 1) * p * p - (q - 1) * (3 * q * q + 4 * q - 8) * p - (q - 1) * (3 * q * q + 8 * q + 16);
  c.t_at_one = c.coeffs[0] + c.coeffs[1] + c.coeffs[2] + c.coeffs[3];
  c.t_at_one_closed = p * (q + 2) * (q - 1) * (n - 4);
  Matrix companion = Matrix::Zero(3, 3);
  companion(1, 0) = companion(2, 1) = 1.0;
  for (int i = 0; i < 3; ++i) companion(i, 2) = -static_cast<double>(c.coeffs[3 - i]) / static_cast<double>(c.coeffs[0]);
  Eigen::EigenSolver<Matrix> es(companion);
  for (int i = 0; i < 3; ++i) c.roots.push_back(es.eigenvalues()(i));
  std::sort(c.roots.begin(), c.roots.end(), [](auto a, auto b) { return a.real() < b.real(); });
  c.lower = static_cast<double>(n) / (q * (p + 1));
  c.upper = static_cast<double>(n) / q;
  for (const auto& r : c.roots) {
    if (std::abs(r.imag()) > 1e-9 * std::max(1.0, std::abs(r))) continue;
    double z = r.real();
    for (int it = 0; it < 3; ++it) {  // polish
      const double dt = (3.0 * c.coeffs[0] * z + 2.0 * c.coeffs[1]) * z + c.coeffs[2];
      if (dt != 0.0) z -= c(z) / dt;
    }
    if (z > c.lower && z < c.upper) {
      c.root = z;
      c.x2 = kowalski_x2(c.n, c.p, c.q, z);
    }
  }
  return c;
}

// Tags a Kowalski solution set as complete when it is exactly the standard
// metric plus the cubic solution.
inline void certify_kowalski(const KowalskiSpec& spec, SolutionSet& set, double tol = 1e-8) {
  const KowalskiCubic cubic = kowalski_cubic(spec);
  int standard = 0, matched = 0, other = 0;
  for (const auto& s : set.solutions) {
    if (s.kind == SolutionKind::standard) {
      ++standard;
      continue;
    }
    const double x1 = 1.0 / s.metric.mu[0], x2 = 1.0 / s.metric.mu[1];
    if (cubic.root && std::abs(x1 - *cubic.root) < tol && std::abs(x2 - *cubic.x2) < tol)
      ++matched;
    else
      ++other;
  }
  const bool n4 = spec.n == 4;
  if (standard == 1 && other == 0 && matched == (n4 ? 0 : 1)) {
    set.completeness = kCertified;
  } else {
    set.completeness = kBestEffort;
    set.notes.push_back("solution set differs from the standard metric plus the cubic solution");
  }
}

// ---------------------------------------------------------------------------
// Circle bundles over irreducible Hermitian symmetric spaces

enum class CircleFamily { su, so, so_u, sp_u };

struct CircleBundleSpec {
  CircleFamily family = CircleFamily::su;
  int n = 0, p = 0;  // p only for su
};

inline std::string family_name(CircleFamily f) {
  switch (f) {
    case CircleFamily::su: return "su";
    case CircleFamily::so: return "so";
    case CircleFamily::so_u: return "so-u";
    case CircleFamily::sp_u: return "sp-u";
  }
  return "?";
}

inline CircleFamily parse_family(const std::string& s) {
  if (s == "su") return CircleFamily::su;
  if (s == "so") return CircleFamily::so;
  if (s == "so-u" || s == "so2n") return CircleFamily::so_u;
  if (s == "sp-u" || s == "sp") return CircleFamily::sp_u;
  if (s == "e6" || s == "e7") throw InputError("the " + s + " row has no construction: exceptional algebras are golden values only");
  throw InputError("unknown circle-bundle family '" + s + "'");
}

inline std::string describe(const CircleBundleSpec& s) {
  const std::string n = std::to_string(s.n);
  switch (s.family) {
    case CircleFamily::su: return "SU(" + n + ")/S(U(" + std::to_string(s.p) + ")xU(" + std::to_string(s.n - s.p) + "))";
    case CircleFamily::so: return "SO(" + n + ")/SO(2)xSO(" + std::to_string(s.n - 2) + ")";
    case CircleFamily::so_u: return "SO(" + std::to_string(2 * s.n) + ")/U(" + n + ")";
    case CircleFamily::sp_u: return "Sp(" + n + ")/U(" + n + ")";
  }
  return "?";
}

inline void validate(const CircleBundleSpec& s) {
  switch (s.family) {
    case CircleFamily::su:
      if (s.n < 2 || s.p < 1 || s.p >= s.n) throw InputError("su circle bundle: need 1 <= p < n");
      break;
    case CircleFamily::so:
      if (s.n < 5) throw InputError("so circle bundle: need n >= 5 for an irreducible base");
      break;
    case CircleFamily::so_u:
      if (s.n < 2) throw InputError("so-u circle bundle: need n >= 2");
      break;
    case CircleFamily::sp_u:
      if (s.n < 1) throw InputError("sp-u circle bundle: need n >= 1");
      break;
  }
  if (s.n > 8) throw InputError("circle bundle: n too large");
}

// Closed form for X as printed in the Table 1 layout.
inline Rational table1_value(const CircleBundleSpec& s) {
  const long n = s.n, p = s.p;
  switch (s.family) {
    case CircleFamily::su: return fraction(p * (n - p) + 1, 2 * p * (n - p));
    case CircleFamily::so: return fraction(n - 1, n - 2);
    case CircleFamily::so_u: return fraction(n * (n - 1) + 2, 2 * n * (n - 1));
    case CircleFamily::sp_u: return fraction(n * (n + 1) + 2, 2 * n * (n + 1));
  }
  return Rational(0);
}

inline int base_dimension(const CircleBundleSpec& s) {
  switch (s.family) {
    case CircleFamily::su: return 2 * s.p * (s.n - s.p);
    case CircleFamily::so: return 2 * (s.n - 2);
    case CircleFamily::so_u: return s.n * (s.n - 1);
    case CircleFamily::sp_u: return s.n * (s.n + 1);
  }
  return 0;
}

inline FibrationSetup build_circle_bundle(const CircleBundleSpec& s, double tol = kDefaultEpsilon) {
  validate(s);
  const int n = s.n;
  MatrixAlgebra g;
  std::vector<ComplexMatrix> l, center;
  switch (s.family) {
    case CircleFamily::su: {
      g = matrix_algebra("su" + std::to_string(n), su_basis(n));
      const int p = s.p;
      for (const auto& a : su_basis(p)) l.push_back(embed(a, n, 0));
      for (const auto& a : su_basis(n - p)) l.push_back(embed(a, n, p));
      ComplexMatrix z(n);
      for (int i = 0; i < n; ++i) z.im(i, i) = i < p ? n - p : -p;
      center.push_back(z);
      break;
    }
    case CircleFamily::so: {
      g = matrix_algebra("so" + std::to_string(n), so_basis(n));
      for (const auto& a : so_basis(n - 2)) l.push_back(embed(a, n, 2));
      center.push_back(real_skew(n, 0, 1));
      break;
    }
    case CircleFamily::so_u: {
      g = matrix_algebra("so" + std::to_string(2 * n), so_basis(2 * n));
      for (const auto& a : su_basis(n)) l.push_back(realify(a));
      ComplexMatrix z(n);
      for (int i = 0; i < n; ++i) z.im(i, i) = 1;
      center.push_back(realify(z));
      break;
    }
    case CircleFamily::sp_u: {
      g = matrix_algebra("sp" + std::to_string(n), sp_basis(n));
      if (n > 1)
        for (const auto& a : su_basis(n)) l.push_back(sp_embed_a(a));
      ComplexMatrix z(n);
      for (int i = 0; i < n; ++i) z.im(i, i) = 1;
      center.push_back(sp_embed_a(z));
      break;
    }
  }
  std::vector<ComplexMatrix> k = l;
  k.insert(k.end(), center.begin(), center.end());
  FibrationOptions opt;
  opt.tol = tol;
  opt.name = describe(s);
  return make_fibration(g.algebra, g.coordinates(k), g.coordinates(l), opt);
}

struct Table1Row {
  std::string group, k, l;
  std::optional<CircleBundleSpec> spec;  // nullopt for exceptional rows
  Rational table_value;
  int base_dim = 0;      // used by the exceptional rows
  Rational c_k_n = fraction(1, 2);
};

// Exceptional rows: arithmetic only.
inline std::vector<Table1Row> exceptional_rows() {
  return {{"E6", "SO(10)xU(1)", "SO(10)", std::nullopt, fraction(17, 32), 32, fraction(1, 2)},
          {"E7", "E6xU(1)", "E6", std::nullopt, fraction(14, 27), 54, fraction(1, 2)}};
}

inline Table1Row table1_row(const CircleBundleSpec& s) {
  Table1Row r;
  r.spec = s;
  r.table_value = table1_value(s);
  r.base_dim = base_dimension(s);
  const std::string n = std::to_string(s.n);
  switch (s.family) {
    case CircleFamily::su:
      r.group = "SU(" + n + ")";
      r.k = "S(U(" + std::to_string(s.p) + ")xU(" + std::to_string(s.n - s.p) + "))";
      r.l = "SU(" + std::to_string(s.p) + ")xSU(" + std::to_string(s.n - s.p) + ")";
      break;
    case CircleFamily::so:
      r.group = "SO(" + n + ")";
      r.k = "SO(2)xSO(" + std::to_string(s.n - 2) + ")";
      r.l = "SO(" + std::to_string(s.n - 2) + ")";
      break;
    case CircleFamily::so_u:
      r.group = "SO(" + std::to_string(2 * s.n) + ")";
      r.k = "U(" + n + ")";
      r.l = "SU(" + n + ")";
      break;
    case CircleFamily::sp_u:
      r.group = "Sp(" + n + ")";
      r.k = "U(" + n + ")";
      r.l = "SU(" + n + ")";
      break;
  }
  return r;
}

// Every constructible row in the covered parameter ranges.
inline std::vector<CircleBundleSpec> table1_sweep() {
  std::vector<CircleBundleSpec> out;
  for (int n = 2; n <= 5; ++n)
    for (int p = 1; p < n; ++p) out.push_back({CircleFamily::su, n, p});
  for (int n = 5; n <= 7; ++n) out.push_back({CircleFamily::so, n, 0});
  for (int n = 2; n <= 4; ++n) out.push_back({CircleFamily::so_u, n, 0});
  for (int n = 1; n <= 3; ++n) out.push_back({CircleFamily::sp_u, n, 0});
  return out;
}

// One representative per matrix family plus the two exceptional rows.
inline std::vector<CircleBundleSpec> table1_representatives() {
  return {{CircleFamily::su, 4, 1}, {CircleFamily::so_u, 3, 0}, {CircleFamily::so, 6, 0}, {CircleFamily::sp_u, 2, 0}};
}

}  // namespace einfib::catalog

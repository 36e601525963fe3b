#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "einfib/core.hpp"
#include "einfib/linalg.hpp"

namespace einfib {

using Rational = mpq_class;

inline double abs_of(double x) { return std::abs(x); }
inline Rational abs_of(const Rational& x) { return Rational(abs(x)); }
inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

inline Rational fraction(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts integers, fractions "p/q" and decimals with an optional exponent.
inline Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty number");
  const auto bad = [&] { return InputError("not a rational or decimal number: '" + raw + "'"); };
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + raw + "'");
    return Rational(num / den);
  }
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    if (s[pos] == '.') {
      if (seen_point) throw bad();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos];
      if (seen_point) ++frac;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  long exponent = 0;
  if (pos < s.size()) {
    const std::string e = s.substr(pos + 1);
    if (e.empty()) throw bad();
    std::size_t used = 0;
    try {
      exponent = std::stol(e, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != e.size() || std::abs(exponent) > 4000) throw bad();
  }
  mpz_class mant(digits, 10);
  if (neg) mant = -mant;
  const long shift = exponent - frac;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(shift)));
  Rational r = shift >= 0 ? Rational(mant * scale) : Rational(mant, scale);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

// Small dense matrix over an exact (or double) field.
template <class T>
class Dense {
 public:
  Dense() = default;
  Dense(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, T(0)) {}

  static Dense identity(int n) {
    Dense out(n, n);
    for (int i = 0; i < n; ++i) out(i, i) = T(1);
    return out;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  Dense transpose() const {
    Dense out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  Dense operator*(const Dense& o) const {
    if (cols_ != o.rows_) throw Error("Dense: shape mismatch in product");
    Dense out(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) out(i, j) += a * o(k, j);
      }
    return out;
  }

  Dense operator+(const Dense& o) const {
    Dense out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
    return out;
  }

  Dense operator-(const Dense& o) const {
    Dense out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
    return out;
  }

  Dense scaled(const T& s) const {
    Dense out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
  }

  Dense column(int j) const {
    Dense out(rows_, 1);
    for (int i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
    return out;
  }

  Dense columns(const std::vector<int>& idx) const {
    Dense out(rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) out(i, static_cast<int>(j)) = (*this)(i, idx[j]);
    return out;
  }

  T trace() const {
    T t(0);
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool operator==(const Dense& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

  Matrix to_matrix() const {
    Matrix out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) out(i, j) = to_double((*this)(i, j));
    return out;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Dense<Rational>;

inline RationalMatrix hcat(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  RationalMatrix out(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
  }
  return out;
}

struct Echelon {
  RationalMatrix reduced;
  std::vector<int> pivots;
};

// Reduced row echelon form by Gauss-Jordan elimination.
inline Echelon rref(RationalMatrix a) {
  Echelon out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const Rational inv = Rational(1) / a(row, col);
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      for (int j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

inline int rank(const RationalMatrix& a) { return static_cast<int>(rref(a).pivots.size()); }

// Basis of ker(a) as columns.
inline RationalMatrix nullspace(const RationalMatrix& a) {
  const Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<int> free;
  for (int j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  RationalMatrix out(a.cols(), static_cast<int>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const int col = static_cast<int>(f);
    out(free[f], col) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) out(e.pivots[r], col) = -e.reduced(static_cast<int>(r), free[f]);
  }
  return out;
}

inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const int n = a.rows();
  const Echelon e = rref(hcat(a, RationalMatrix::identity(n)));
  if (static_cast<int>(e.pivots.size()) < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = e.reduced(i, n + j);
  return out;
}

// Some x with a x = b, or nullopt when the system is inconsistent.
inline std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b) {
  const Echelon e = rref(hcat(a, b));
  for (int p : e.pivots)
    if (p >= a.cols()) return std::nullopt;
  RationalMatrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(static_cast<int>(r), a.cols() + j);
  return x;
}

template <class T>
T max_abs(const Dense<T>& a) {
  T best(0);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const T v = abs_of(a(i, j));
      if (v > best) best = v;
    }
  return best;
}

}  // namespace einfib

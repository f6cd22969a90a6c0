#ifndef LOEWNER_CORE_TYPES_HPP
#define LOEWNER_CORE_TYPES_HPP

#include "loewner/scalar.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace loewner {

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

/// Strictly increasing positive nodes p_1 < ... < p_n.
///
/// When built from rationals the exact values are kept alongside their
/// nearest doubles; extended-precision routes convert from the exact values.
class PointConfig {
 public:
  static PointConfig from_reals(std::vector<double> values) {
    validate(std::span<const double>(values));
    PointConfig c;
    c.points_ = std::move(values);
    return c;
  }

  static PointConfig from_rationals(std::vector<Rational> values) {
    std::vector<double> approx;
    approx.reserve(values.size());
    for (const auto& q : values) approx.push_back(q.convert_to<double>());
    validate_exact(values);
    PointConfig c;
    c.points_ = std::move(approx);
    c.exact_ = std::move(values);
    return c;
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }
  bool has_exact() const { return exact_.has_value(); }

  /// Exact values if present, else the exact dyadic value of each double.
  std::vector<Rational> exact_or_dyadic() const {
    if (exact_) return *exact_;
    std::vector<Rational> out;
    out.reserve(points_.size());
    for (double v : points_) out.push_back(exact_rational(v));
    return out;
  }

  /// Node i at the active working precision.
  template <class Real>
  Real point(std::size_t i) const {
    if constexpr (is_big_real_v<Real>) {
      if (exact_) return to_real<Real>((*exact_)[i]);
    }
    return to_real<Real>(points_[i]);
  }

  template <class Real>
  std::vector<Real> points_as() const {
    std::vector<Real> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(point<Real>(i));
    return out;
  }

  bool operator==(const PointConfig& o) const {
    return points_ == o.points_ && exact_ == o.exact_;
  }

 private:
  PointConfig() = default;

  template <class T>
  static void check_order(std::span<const T> v) {
    if (v.empty()) throw InputError("point configuration is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0)) throw InputError("points must be strictly positive");
    }
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i] == v[i + 1]) throw InputError("duplicate point");
      if (v[i] > v[i + 1]) throw InputError("points are not increasing");
    }
  }

  static void validate(std::span<const double> v) {
    for (double x : v) {
      if (!std::isfinite(x)) throw InputError("points must be finite");
    }
    check_order(v);
  }

  static void validate_exact(const std::vector<Rational>& v) {
    check_order(std::span<const Rational>(v));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].convert_to<double>() >= v[i + 1].convert_to<double>()) {
        throw InputError("points are not separable at double precision");
      }
    }
  }

  std::vector<double> points_;
  std::optional<std::vector<Rational>> exact_;
};

inline PointConfig make_point_config(std::vector<double> values) {
  return PointConfig::from_reals(std::move(values));
}

inline PointConfig make_point_config(std::vector<Rational> values) {
  return PointConfig::from_rationals(std::move(values));
}

// ---------------------------------------------------------------------------
// Exponent
// ---------------------------------------------------------------------------

class Exponent {
 public:
  Exponent(double r) : r_(r) {  // NOLINT(google-explicit-constructor)
    if (!std::isfinite(r)) throw InputError("exponent must be finite");
    if (std::nearbyint(r) == r && std::fabs(r) < 9.0e15) {
      integer_ = static_cast<long>(r);
    }
  }

  double value() const { return r_; }
  bool is_integer() const { return integer_.has_value(); }
  const std::optional<long>& integer_value() const { return integer_; }

  bool operator==(const Exponent&) const = default;

 private:
  double r_;
  std::optional<long> integer_;
};

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  const std::vector<T>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

/// Dense symmetric matrix; every write updates both triangles.
template <class T>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : m_(n, n) {}

  /// Symmetrizes a square matrix as (A + A^T) / 2.
  static SymMatrix from_dense(const Matrix<T>& a) {
    if (a.rows() != a.cols()) throw InputError("symmetric matrix must be square");
    SymMatrix s(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      s.set(i, i, a(i, i));
      for (std::size_t j = i + 1; j < a.cols(); ++j) {
        s.set(i, j, a(i, j) == a(j, i) ? a(i, j) : T((a(i, j) + a(j, i)) / 2));
      }
    }
    return s;
  }

  static SymMatrix identity(std::size_t n) { return from_dense(Matrix<T>::identity(n)); }

  std::size_t order() const { return m_.rows(); }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, const T& v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Matrix<T>& dense() const { return m_; }

  bool operator==(const SymMatrix&) const = default;

 private:
  Matrix<T> m_;
};

/// X^T A X, symmetrized.
template <class T>
SymMatrix<T> congruence(const SymMatrix<T>& a, const Matrix<T>& x) {
  return SymMatrix<T>::from_dense(x.transpose() * (a.dense() * x));
}

template <class T>
Matrix<T> diagonal(std::span<const T> d) {
  Matrix<T> m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

// ---------------------------------------------------------------------------
// Inertia
// ---------------------------------------------------------------------------

/// (pi, zeta, nu): counts of positive, zero and negative eigenvalues.
struct Inertia {
  int pos = 0;
  int zero = 0;
  int neg = 0;

  int order() const { return pos + zero + neg; }
  /// The inertia of -A.
  Inertia reflected() const { return {neg, zero, pos}; }

  bool operator==(const Inertia&) const = default;
  Inertia operator+(const Inertia& o) const { return {pos + o.pos, zero + o.zero, neg + o.neg}; }

  std::string str() const {
    return "(" + std::to_string(pos) + "," + std::to_string(zero) + "," + std::to_string(neg) + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const Inertia& in) { return os << in.str(); }

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Precision policy. Tolerances are stated for 53-bit arithmetic and are
/// scaled by 2^(53 - precision_bits) at wider precisions.
struct ToleranceContext {
  unsigned precision_bits = 53;
  double zero_rel_tol = 1e-10;
  double residual_tol = 1e-10;
  std::size_t grid_points = 100000;

  void validate() const {
    if (precision_bits < 53) throw InputError("precision_bits must be at least 53");
    if (!(zero_rel_tol > 0)) throw InputError("zero_rel_tol must be positive");
    if (!(residual_tol > 0)) throw InputError("residual_tol must be positive");
  }

  ToleranceContext at_precision(unsigned bits) const {
    ToleranceContext t = *this;
    t.precision_bits = bits;
    return t;
  }

  /// Zero-classification threshold at the active working precision.
  template <class Real>
  Real zero_tol() const {
    return Real(zero_rel_tol) * pow2<Real>(53L - static_cast<long>(mantissa_bits<Real>()));
  }

  template <class Real>
  Real residual_tol_at() const {
    return Real(residual_tol) * pow2<Real>(53L - static_cast<long>(mantissa_bits<Real>()));
  }

  bool operator==(const ToleranceContext&) const = default;
};

}  // namespace loewner

#endif  // LOEWNER_CORE_TYPES_HPP

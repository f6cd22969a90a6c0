#ifndef LOEWNER_TEST_SUPPORT_HPP
#define LOEWNER_TEST_SUPPORT_HPP

// Shared generators and independent oracles for the test suites.

#include "loewner/loewner.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

namespace loewner::testing {

/// n distinct sorted points uniform in (lo, hi], separated by at least `gap`.
inline PointConfig random_points(std::mt19937_64& rng, std::size_t n, double lo = 0.0, double hi = 10.0,
                                 double gap = 1e-3) {
  std::uniform_real_distribution<double> u(lo, hi);
  while (true) {
    std::vector<double> v;
    while (v.size() < n) {
      const double x = u(rng);
      if (x > lo) v.push_back(x);
    }
    std::sort(v.begin(), v.end());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i) ok = ok && v[i + 1] - v[i] > gap;
    if (ok) return make_point_config(v);
  }
}

/// n distinct sorted rationals a/b with 1 <= a <= max_num, 1 <= b <= max_den.
inline PointConfig random_rational_points(std::mt19937_64& rng, std::size_t n, int max_num = 20,
                                          int max_den = 5) {
  std::uniform_int_distribution<int> num(1, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::set<Rational> s;
  while (s.size() < n) s.insert(Rational(num(rng), den(rng)));
  return make_point_config(std::vector<Rational>(s.begin(), s.end()));
}

/// Non-integer exponent uniform in (lo, hi), at least `margin` from integers.
inline double random_non_integer(std::mt19937_64& rng, double lo, double hi, double margin = 1e-3) {
  std::uniform_real_distribution<double> u(lo, hi);
  while (true) {
    const double r = u(rng);
    if (std::fabs(r - std::nearbyint(r)) > margin) return r;
  }
}

/// Determinant by Laplace expansion along the first row.
template <class T>
T laplace_determinant(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  T det(0);
  for (std::size_t c = 0; c < n; ++c) {
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = a(i, j);
      }
    }
    const T term = a(0, c) * laplace_determinant(minor);
    det += (c % 2 == 0) ? term : T(-term);
  }
  return det;
}

/// Rank by exact row reduction.
inline std::size_t exact_rank(Matrix<Rational> a) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(piv, j));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      const Rational f = a(i, c) / a(rank, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Inertia by sign counting of the characteristic polynomial's roots is too
/// heavy here; the exact oracle is Sylvester's criterion on leading principal
/// minors, valid when all of them are nonzero (then the number of sign
/// changes in 1, d_1, d_2, ... d_n equals the number of negative eigenvalues).
inline std::optional<Inertia> leading_minor_inertia(const SymMatrix<Rational>& a) {
  const std::size_t n = a.order();
  Rational prev(1);
  Inertia in;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix<Rational> lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = a(i, j);
    const Rational d = laplace_determinant(lead);
    if (d == 0) return std::nullopt;
    if ((d > 0) == (prev > 0)) {
      ++in.pos;
    } else {
      ++in.neg;
    }
    prev = d;
  }
  return in;
}

template <class T>
Matrix<T> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(g(rng));
  return m;
}

/// Random symmetric matrix with prescribed inertia: Q diag(d) Q^T with
/// |d_i| in [0.5, 2] for nonzero entries.
inline SymMatrix<double> random_with_inertia(std::mt19937_64& rng, const Inertia& in) {
  const std::size_t n = static_cast<std::size_t>(in.order());
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::vector<double> d;
  for (int i = 0; i < in.pos; ++i) d.push_back(mag(rng));
  for (int i = 0; i < in.zero; ++i) d.push_back(0.0);
  for (int i = 0; i < in.neg; ++i) d.push_back(-mag(rng));
  std::shuffle(d.begin(), d.end(), rng);
  // Orthogonal factor from the eigenvectors of a random symmetric matrix.
  auto g = random_matrix<double>(rng, n, n);
  const auto sym = SymMatrix<double>::from_dense(g);
  Matrix<double> q;
  eig_sym(sym, ToleranceContext{}, &q);
  const auto D = diagonal<double>(std::span<const double>(d));
  return SymMatrix<double>::from_dense(q * (D * q.transpose()));
}

}  // namespace loewner::testing

#endif  // LOEWNER_TEST_SUPPORT_HPP

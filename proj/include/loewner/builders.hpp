#ifndef LOEWNER_BUILDERS_HPP
#define LOEWNER_BUILDERS_HPP

// Structured matrices: Loewner matrices of t^r, the sinh-transformed
// congruent form, diagonal/ones/antidiagonal helpers, Vandermonde rows,
// the power-sum matrix [(p_i + p_j)^r] and the two-sequence Loewner matrix.
//
// Every builder is templated on the entry type T. T = double or BigReal
// evaluates at the active working precision; T = Rational builds the exact
// matrix and requires an integer exponent.

#include "loewner/core_types.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace loewner {

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

struct LoewnerSpec {
  PointConfig config;
  Exponent exponent;
};

/// Nodes in the entry type: exact (or dyadic) rationals for T = Rational.
template <class T>
std::vector<T> nodes(const PointConfig& config) {
  if constexpr (is_rational_v<T>) {
    return config.exact_or_dyadic();
  } else {
    return config.points_as<T>();
  }
}

namespace detail {

template <class T>
long require_integer_exponent(const Exponent& e) {
  if (!e.is_integer()) throw InputError("exact construction requires an integer exponent");
  return *e.integer_value();
}

/// (a^r - b^r) / (a - b) for a != b, both positive.
///
/// Evaluated as b^(r-1) * expm1(r t) / expm1(t) with t = log(a/b), which is
/// free of cancellation when a and b are close.
template <class Real>
Real divided_power(const Real& a, const Real& b, const Real& r) {
  using std::expm1;
  using std::log1p;
  using std::pow;
  const Real t = log1p((a - b) / b);
  return pow(b, r - 1) * expm1(r * t) / expm1(t);
}

template <class Real>
Real power_derivative(const Real& p, const Real& r) {
  using std::pow;
  return r * pow(p, r - 1);
}

inline Rational divided_power_exact(const Rational& a, const Rational& b, long r) {
  return (pow_int(a, r) - pow_int(b, r)) / (a - b);
}

}  // namespace detail

/// L_r = [(p_i^r - p_j^r) / (p_i - p_j)], diagonal r p_i^(r-1).
template <class T>
SymMatrix<T> loewner_matrix(const PointConfig& config, const Exponent& exponent) {
  const std::size_t n = config.size();
  const auto p = nodes<T>(config);
  SymMatrix<T> L(n);
  if constexpr (is_rational_v<T>) {
    const long r = detail::require_integer_exponent<T>(exponent);
    for (std::size_t i = 0; i < n; ++i) {
      L.set(i, i, Rational(r) * pow_int(p[i], r - 1));
      for (std::size_t j = 0; j < i; ++j) L.set(i, j, detail::divided_power_exact(p[i], p[j], r));
    }
  } else {
    const T r(exponent.value());
    for (std::size_t i = 0; i < n; ++i) {
      L.set(i, i, detail::power_derivative(p[i], r));
      for (std::size_t j = 0; j < i; ++j) L.set(i, j, detail::divided_power(p[i], p[j], r));
    }
  }
  return L;
}

template <class T>
SymMatrix<T> loewner_matrix(const LoewnerSpec& spec) {
  return loewner_matrix<T>(spec.config, spec.exponent);
}

/// [sinh(r(x_i - x_j)) / sinh(x_i - x_j)], diagonal r. x strictly increasing.
template <class Real>
SymMatrix<Real> sinh_loewner(std::span<const Real> x, const Exponent& exponent) {
  using std::sinh;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i] < x[i + 1])) throw InputError("sinh abscissas must be strictly increasing");
  }
  if (x.empty()) throw InputError("sinh abscissas are empty");
  const Real r(exponent.value());
  SymMatrix<Real> M(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    M.set(i, i, r);
    for (std::size_t j = 0; j < i; ++j) {
      const Real d = x[i] - x[j];
      M.set(i, j, sinh(r * d) / sinh(d));
    }
  }
  return M;
}

template <class Real>
SymMatrix<Real> sinh_loewner(const std::vector<Real>& x, const Exponent& exponent) {
  return sinh_loewner<Real>(std::span<const Real>(x), exponent);
}

/// D = diag(p_1, ..., p_n).
template <class T>
SymMatrix<T> diag_D(const PointConfig& config) {
  const auto p = nodes<T>(config);
  SymMatrix<T> D(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) D.set(i, i, p[i]);
  return D;
}

/// D^s for real s (integer s when T = Rational).
template <class T>
SymMatrix<T> diag_D_power(const PointConfig& config, const Exponent& s) {
  const auto p = nodes<T>(config);
  SymMatrix<T> D(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if constexpr (is_rational_v<T>) {
      D.set(i, i, pow_int(p[i], detail::require_integer_exponent<T>(s)));
    } else {
      using std::pow;
      D.set(i, i, pow(p[i], T(s.value())));
    }
  }
  return D;
}

/// E: the n x n matrix of ones.
template <class T>
SymMatrix<T> ones_E(std::size_t n) {
  if (n == 0) throw InputError("ones matrix needs n >= 1");
  SymMatrix<T> E(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) E.set(i, j, T(1));
  return E;
}

/// r x n Vandermonde matrix; row a is (p_1^a, ..., p_n^a), a = 0..r-1.
template <class T>
Matrix<T> vandermonde_W(const PointConfig& config, const Exponent& rows) {
  if (!rows.is_integer() || *rows.integer_value() < 1) {
    throw InputError("Vandermonde row count must be a positive integer");
  }
  const auto r = static_cast<std::size_t>(*rows.integer_value());
  const auto p = nodes<T>(config);
  Matrix<T> W(r, p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    T v(1);
    for (std::size_t a = 0; a < r; ++a) {
      W(a, j) = v;
      v *= p[j];
    }
  }
  return W;
}

/// r x r matrix with ones on the antidiagonal.
template <class T>
SymMatrix<T> antidiag_V(std::size_t r) {
  if (r == 0) throw InputError("antidiagonal matrix needs r >= 1");
  SymMatrix<T> V(r);
  for (std::size_t i = 0; i < r; ++i) V.set(i, r - 1 - i, T(1));
  return V;
}

/// P_r = [(p_i + p_j)^r].
template <class T>
SymMatrix<T> power_sum_matrix(const PointConfig& config, const Exponent& exponent) {
  const auto p = nodes<T>(config);
  SymMatrix<T> P(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if constexpr (is_rational_v<T>) {
        P.set(i, j, pow_int(p[i] + p[j], detail::require_integer_exponent<T>(exponent)));
      } else {
        using std::pow;
        P.set(i, j, pow(p[i] + p[j], T(exponent.value())));
      }
    }
  }
  return P;
}

/// [(p_i^r - q_j^r) / (p_i - q_j)], using r p_i^(r-1) where p_i and q_j
/// coincide to working precision.
template <class Real>
Matrix<Real> cross_loewner(const PointConfig& p_config, const PointConfig& q_config,
                           const Exponent& exponent) {
  using std::abs;
  if (p_config.size() != q_config.size()) throw InputError("cross Loewner: length mismatch");
  const auto p = nodes<Real>(p_config);
  const auto q = nodes<Real>(q_config);
  const Real r(exponent.value());
  const Real u = epsilon<Real>();
  Matrix<Real> C(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (abs(p[i] - q[j]) <= u * p[i]) {
        C(i, j) = detail::power_derivative(p[i], r);
      } else {
        C(i, j) = detail::divided_power(p[i], q[j], r);
      }
    }
  }
  return C;
}

}  // namespace loewner

#endif  // LOEWNER_BUILDERS_HPP

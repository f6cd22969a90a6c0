#ifndef LOEWNER_THEOREM_ORACLE_HPP
#define LOEWNER_THEOREM_ORACLE_HPP

// Predicted inertia of L_r for every real r, instance verification against
// the inertia engine, compression onto the moment-orthogonal subspaces
// H_k = {x : sum_i p_i^j x_i = 0, j < k}, and the algebraic identities
//   L_{-r} = -D^{-r} L_r D^{-r},
//   L_r = Delta Ltilde_r Delta  (p_i = e^{2 x_i}),
//   L_r = D^{r-1} E + D L_{r-2} D + E D^{r-1}.

#include "loewner/builders.hpp"
#include "loewner/core_types.hpp"
#include "loewner/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace loewner {

enum class Rule {
  kZeroMatrix,   // r = 0
  kIntegerPoint, // r in {1, ..., n}
  kNonInteger,   // 0 < r < n, r not an integer
  kBeyondN,      // r > n: same inertia as L_n
  kReflection,   // r < 0: mirrored prediction for -r
};

inline const char* rule_name(Rule rule) {
  switch (rule) {
    case Rule::kZeroMatrix: return "zero-matrix";
    case Rule::kIntegerPoint: return "integer";
    case Rule::kNonInteger: return "non-integer";
    case Rule::kBeyondN: return "beyond-n";
    case Rule::kReflection: return "reflection";
  }
  return "unknown";
}

struct Prediction {
  Inertia inertia;
  Rule rule = Rule::kZeroMatrix;
};

namespace detail {

/// Inertia at r = m in {1..n}: (k, n-m, k) for m = 2k, (k, n-m, k-1) for m = 2k-1.
inline Inertia integer_point_inertia(int n, long m) {
  const int mi = static_cast<int>(m);
  if (m % 2 == 0) return {mi / 2, n - mi, mi / 2};
  const int k = (mi + 1) / 2;
  return {k, n - mi, k - 1};
}

/// Inertia for non-integer 0 < r < n from floor(r).
inline Inertia non_integer_inertia(int n, long floor_r) {
  const int f = static_cast<int>(floor_r);
  if (f % 2 == 0) {
    const int k = f / 2;
    return {n - k, 0, k};
  }
  const int k = (f + 1) / 2;
  return {k, 0, n - k};
}

}  // namespace detail

inline Prediction predicted_inertia(std::size_t n_points, const Exponent& exponent) {
  if (n_points == 0) throw InputError("prediction needs n >= 1");
  const int n = static_cast<int>(n_points);
  const double r = exponent.value();
  if (r == 0) return {{0, n, 0}, Rule::kZeroMatrix};
  if (r < 0) {
    const Prediction mirrored = predicted_inertia(n_points, Exponent(-r));
    return {mirrored.inertia.reflected(), Rule::kReflection};
  }
  if (exponent.is_integer()) {
    const long m = *exponent.integer_value();
    if (m <= n) return {detail::integer_point_inertia(n, m), Rule::kIntegerPoint};
    return {detail::integer_point_inertia(n, n), Rule::kBeyondN};
  }
  if (r < n) return {detail::non_integer_inertia(n, static_cast<long>(std::floor(r))), Rule::kNonInteger};
  return {detail::integer_point_inertia(n, n), Rule::kBeyondN};
}

struct VerifyReport {
  double r = 0;
  Prediction predicted;
  Inertia computed;
  bool match = false;
  bool exact_route = false;
  unsigned precision_bits = 53;
  std::optional<InertiaReport> float_report;
  std::string diagnostics;
};

/// Compares the predicted inertia with the computed one. Integer r is
/// decided exactly; other r run the float routes, raising the precision
/// while the routes disagree, an eigenvalue sits near the zero threshold,
/// or the result differs from the prediction.
inline VerifyReport verify_instance(const PointConfig& config, const Exponent& r,
                                    const ToleranceContext& tol) {
  tol.validate();
  VerifyReport rep;
  rep.r = r.value();
  rep.predicted = predicted_inertia(config.size(), r);
  if (r.is_integer()) {
    rep.exact_route = true;
    rep.computed = exact_inertia(loewner_matrix<Rational>(config, r));
    try {
      rep.float_report = with_precision(tol.precision_bits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return inertia(loewner_matrix<Real>(config, r), tol);
      });
      if (!(rep.float_report->consensus == rep.computed)) {
        rep.diagnostics = "float routes at " + std::to_string(tol.precision_bits) +
                          " bits gave " + rep.float_report->consensus.str();
      }
    } catch (const ConvergenceError& e) {
      rep.diagnostics = e.what();
    }
    rep.precision_bits = tol.precision_bits;
  } else {
    const Inertia expected = rep.predicted.inertia;
    auto robust = robust_inertia(
        [&](auto tag) {
          using Real = typename decltype(tag)::type;
          return loewner_matrix<Real>(config, r);
        },
        tol, [&](const Inertia& in) { return in == expected; });
    rep.computed = robust.report.consensus;
    rep.float_report = robust.report;
    rep.precision_bits = robust.precision_bits;
    rep.diagnostics = robust.diagnostics;
    if (robust.report.disagreement) rep.diagnostics += "routes disagree at final precision; ";
  }
  rep.match = rep.computed == rep.predicted.inertia;
  return rep;
}

/// Orthonormal basis (n x (n-k) columns) of H_k, the null space of the
/// k x n moment matrix with rows (p_1^j, ..., p_n^j), j = 0..k-1.
///
/// Householder QR of the moment matrix transpose; the trailing n-k columns
/// of the orthogonal factor span its orthogonal complement. k = 0 gives I.
template <class Real>
Matrix<Real> subspace_basis(const PointConfig& config, std::size_t k) {
  using std::sqrt;
  const std::size_t n = config.size();
  if (k >= n) throw InputError("subspace H_k needs k < n");
  const auto p = config.points_as<Real>();
  Matrix<Real> a(n, k);  // moment matrix transpose
  for (std::size_t i = 0; i < n; ++i) {
    Real v(1);
    for (std::size_t j = 0; j < k; ++j) {
      a(i, j) = v;
      v *= p[i];
    }
  }
  Matrix<Real> q = Matrix<Real>::identity(n);
  for (std::size_t j = 0; j < k; ++j) {
    Real norm2(0);
    for (std::size_t i = j; i < n; ++i) norm2 += a(i, j) * a(i, j);
    const Real alpha = a(j, j) > 0 ? Real(-sqrt(norm2)) : Real(sqrt(norm2));
    std::vector<Real> v(n, Real(0));
    for (std::size_t i = j; i < n; ++i) v[i] = a(i, j);
    v[j] -= alpha;
    Real vnorm2(0);
    for (std::size_t i = j; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0) continue;
    // a <- H a for the remaining columns.
    for (std::size_t c = j; c < k; ++c) {
      Real dot(0);
      for (std::size_t i = j; i < n; ++i) dot += v[i] * a(i, c);
      const Real f = 2 * dot / vnorm2;
      for (std::size_t i = j; i < n; ++i) a(i, c) -= f * v[i];
    }
    // q <- q H.
    for (std::size_t row = 0; row < n; ++row) {
      Real dot(0);
      for (std::size_t i = j; i < n; ++i) dot += q(row, i) * v[i];
      const Real f = 2 * dot / vnorm2;
      for (std::size_t i = j; i < n; ++i) q(row, i) -= f * v[i];
    }
  }
  Matrix<Real> basis(n, n - k);
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t c = k; c < n; ++c) basis(row, c - k) = q(row, c);
  return basis;
}

/// Q^T L_r Q for the H_k basis Q.
template <class Real>
SymMatrix<Real> compressed_loewner(const PointConfig& config, const Exponent& r, std::size_t k) {
  return congruence(loewner_matrix<Real>(config, r), subspace_basis<Real>(config, k));
}

/// Inertia of L_r compressed onto H_k.
inline Inertia conditional_inertia(const PointConfig& config, const Exponent& r, std::size_t k,
                                   const ToleranceContext& tol) {
  tol.validate();
  if (k >= config.size()) throw InputError("subspace H_k needs k < n");
  auto robust = robust_inertia(
      [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return compressed_loewner<Real>(config, r, k);
      },
      tol);
  return robust.report.consensus;
}

/// Inertia of L_r by the cheapest sound route. Integer r is exact. At any
/// other r the matrix is nonsingular, so a zero count is a precision artifact
/// (typically a badly graded matrix at negative r) and forces escalation.
inline RobustInertia loewner_inertia(const PointConfig& config, const Exponent& r, const ToleranceContext& tol) {
  tol.validate();
  RobustInertia out;
  if (r.is_integer()) {
    const Inertia in = exact_inertia(loewner_matrix<Rational>(config, r));
    out.report = {in, in, in, in, false, false};
    out.precision_bits = 0;
    return out;
  }
  return robust_inertia(
      [&](auto tag) {
        using Real = typename decltype(tag)::type;
        return loewner_matrix<Real>(config, r);
      },
      tol, [](const Inertia& in) { return in.zero == 0; });
}

struct NegativeEigenvalueResult {
  bool holds = false;
  Inertia inertia;
};

/// For r > 1 and n >= 2, L_r has at least one negative eigenvalue.
inline NegativeEigenvalueResult prop21_check(const PointConfig& config, const Exponent& r,
                                 const ToleranceContext& tol) {
  if (!(r.value() > 1)) throw InputError("negative-eigenvalue check requires r > 1");
  if (config.size() < 2) throw InputError("negative-eigenvalue check requires n >= 2");
  NegativeEigenvalueResult res;
  res.inertia = loewner_inertia(config, r, tol).report.consensus;
  res.holds = res.inertia.neg >= 1;
  return res;
}

/// Max relative residuals of the three identities.
struct IdentityResiduals {
  double reflection = 0;       // L_{-r} + D^{-r} L_r D^{-r}
  double sinh_congruence = 0;  // L_r - Delta Ltilde_r Delta
  double recurrence = 0;       // L_r - (D^{r-1} E + D L_{r-2} D + E D^{r-1})

  double max() const { return std::max({reflection, sinh_congruence, recurrence}); }
};

namespace detail {

template <class T>
T max_abs(const Matrix<T>& m) {
  using std::abs;
  T best(0);
  for (const auto& v : m.data()) {
    const T a = abs(v);
    if (a > best) best = a;
  }
  return best;
}

template <class T>
Matrix<T> plus(const Matrix<T>& a, const Matrix<T>& b, const T& sb = T(1)) {
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + sb * b(i, j);
  return c;
}

/// Residual matrices of the reflection and recurrence identities plus the
/// magnitudes used to normalize them.
template <class T>
struct IdentityTerms {
  Matrix<T> reflection_residual;
  T reflection_scale;
  Matrix<T> recurrence_residual;
  T recurrence_scale;
};

template <class T>
IdentityTerms<T> identity_terms(const PointConfig& config, const Exponent& r) {
  const std::size_t n = config.size();
  const double rv = r.value();
  const auto L = loewner_matrix<T>(config, r).dense();
  const auto Lneg = loewner_matrix<T>(config, Exponent(-rv)).dense();
  const auto Dm = diag_D_power<T>(config, Exponent(-rv)).dense();
  const auto mirrored = Dm * (L * Dm);

  const auto D = diag_D<T>(config).dense();
  const auto Dr1 = diag_D_power<T>(config, Exponent(rv - 1)).dense();
  const auto E = ones_E<T>(n).dense();
  const auto Lr2 = loewner_matrix<T>(config, Exponent(rv - 2)).dense();
  const auto left = Dr1 * E;
  const auto middle = D * (Lr2 * D);
  const auto right = E * Dr1;
  auto rhs = plus(plus(left, middle), right);

  IdentityTerms<T> out;
  out.reflection_residual = plus(Lneg, mirrored);
  out.reflection_scale = std::max(max_abs(Lneg), max_abs(mirrored));
  out.recurrence_residual = plus(L, rhs, T(-1));
  out.recurrence_scale = std::max({max_abs(L), max_abs(left), max_abs(middle)});
  return out;
}

}  // namespace detail

/// Float residuals at the context's precision, each normalized by the
/// largest entry among the terms involved.
inline IdentityResiduals verify_identities(const PointConfig& config, const Exponent& r,
                                           const ToleranceContext& tol) {
  tol.validate();
  return with_precision(tol.precision_bits, [&](auto tag) {
    using Real = typename decltype(tag)::type;
    using std::exp;
    using std::log;
    const std::size_t n = config.size();
    IdentityResiduals res;
    const auto terms = detail::identity_terms<Real>(config, r);
    res.reflection = to_double<Real>(detail::max_abs(terms.reflection_residual) / terms.reflection_scale);
    res.recurrence = to_double<Real>(detail::max_abs(terms.recurrence_residual) / terms.recurrence_scale);

    // p_i = e^{2 x_i}, Delta = diag(e^{(r-1) x_i}).
    const auto p = config.points_as<Real>();
    std::vector<Real> x(n);
    std::vector<Real> delta(n);
    const Real rr(r.value());
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = log(p[i]) / 2;
      delta[i] = exp((rr - 1) * x[i]);
    }
    const auto Lt = sinh_loewner<Real>(x, r).dense();
    const auto Dl = diagonal<Real>(std::span<const Real>(delta));
    const auto L = loewner_matrix<Real>(config, r).dense();
    const auto congruent = Dl * (Lt * Dl);
    res.sinh_congruence = to_double<Real>(detail::max_abs(detail::plus(L, congruent, Real(-1))) /
                                          std::max(detail::max_abs(L), detail::max_abs(congruent)));
    return res;
  });
}

struct ExactIdentityResiduals {
  Rational reflection;
  Rational recurrence;
};

/// Max absolute residuals of the reflection and recurrence identities in
/// rational arithmetic (integer r).
inline ExactIdentityResiduals verify_identities_exact(const PointConfig& config, const Exponent& r) {
  if (!r.is_integer()) throw InputError("exact identity check requires an integer exponent");
  const auto terms = detail::identity_terms<Rational>(config, r);
  return {detail::max_abs(terms.reflection_residual), detail::max_abs(terms.recurrence_residual)};
}

}  // namespace loewner

#endif  // LOEWNER_THEOREM_ORACLE_HPP

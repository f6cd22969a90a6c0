#ifndef LOEWNER_INERTIA_HPP
#define LOEWNER_INERTIA_HPP

// Inertia of real symmetric matrices by three independent routes:
//   * eigenvalues from cyclic Jacobi rotations, classified by a relative
//     zero threshold;
//   * Bunch-Kaufman symmetric pivoting (1x1 / 2x2 congruence blocks);
//   * exact symmetric Gaussian congruence over the rationals.

#include "loewner/builders.hpp"
#include "loewner/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loewner {

template <class Real>
struct Spectrum {
  std::vector<Real> eigenvalues;  // ascending
  Real offdiag_residual{0};
  int sweeps = 0;

  Real max_abs() const {
    using std::abs;
    Real m(0);
    for (const auto& v : eigenvalues) m = std::max<Real>(m, abs(v));
    return m;
  }
};

template <class T>
T frobenius_norm(const Matrix<T>& a) {
  using std::sqrt;
  T s(0);
  for (const auto& v : a.data()) s += v * v;
  return sqrt(s);
}

/// Eigenvalues by cyclic Jacobi rotations.
///
/// Sweeps continue until a full sweep performs no rotation; an entry is left
/// alone once |a_pq| <= eps ||A||_F / n. Throws ConvergenceError when the
/// off-diagonal mass is still above residual_tol ||A||_F after the sweep
/// budget.
template <class Real>
Spectrum<Real> eig_sym(const SymMatrix<Real>& A, const ToleranceContext& tol,
                       Matrix<Real>* eigenvectors = nullptr) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = A.order();
  Matrix<Real> a = A.dense();
  Matrix<Real> v = Matrix<Real>::identity(n);
  const Real norm = frobenius_norm(a);
  Spectrum<Real> s;
  if (norm == 0) {
    s.eigenvalues.assign(n, Real(0));
    if (eigenvectors) *eigenvectors = v;
    return s;
  }
  const Real negligible = epsilon<Real>() * norm / Real(static_cast<double>(n));
  constexpr int kMaxSweeps = 100;
  bool rotated = true;
  while (rotated && s.sweeps < kMaxSweeps) {
    rotated = false;
    ++s.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (abs(a(p, q)) <= negligible) {
          a(p, q) = a(q, p) = Real(0);
          continue;
        }
        rotated = true;
        // Rutishauser's stable rotation.
        const Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        Real t = Real(1) / (abs(theta) + sqrt(theta * theta + 1));
        if (theta < 0) t = -t;
        const Real c = Real(1) / sqrt(t * t + 1);
        const Real sn = t * c;
        const Real tau = sn / (c + 1);
        const Real apq = a(p, q);
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = Real(0);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Real akp = a(k, p);
          const Real akq = a(k, q);
          a(k, p) = a(p, k) = akp - sn * (akq + tau * akp);
          a(k, q) = a(q, k) = akq + sn * (akp - tau * akq);
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real vkp = v(k, p);
          const Real vkq = v(k, q);
          v(k, p) = vkp - sn * (vkq + tau * vkp);
          v(k, q) = vkq + sn * (vkp - tau * vkq);
        }
      }
    }
  }
  Real off(0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) off += a(i, j) * a(i, j);
  s.offdiag_residual = sqrt(off);
  if (rotated && s.offdiag_residual > tol.residual_tol_at<Real>() * norm) {
    throw ConvergenceError("Jacobi iteration did not converge; raise the working precision");
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  s.eigenvalues.reserve(n);
  for (std::size_t i : order) s.eigenvalues.push_back(a(i, i));
  if (eigenvectors) {
    Matrix<Real> sorted(n, n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t k = 0; k < n; ++k) sorted(k, c) = v(k, order[c]);
    *eigenvectors = std::move(sorted);
  }
  return s;
}

/// Threshold below which |lambda| counts as zero: zero_tol * scale * n.
template <class Real>
Real zero_threshold(const Real& scale, std::size_t order, const ToleranceContext& tol) {
  return tol.zero_tol<Real>() * scale * Real(static_cast<double>(order));
}

template <class Real>
Inertia inertia_from_spectrum(const Spectrum<Real>& s, const Real& scale, const ToleranceContext& tol) {
  using std::abs;
  const Real thr = zero_threshold(scale, s.eigenvalues.size(), tol);
  Inertia in;
  for (const auto& lam : s.eigenvalues) {
    if (abs(lam) <= thr) {
      ++in.zero;
    } else if (lam > 0) {
      ++in.pos;
    } else {
      ++in.neg;
    }
  }
  return in;
}

template <class Real>
Inertia inertia_from_spectrum(const Spectrum<Real>& s, const ToleranceContext& tol) {
  return inertia_from_spectrum(s, s.max_abs(), tol);
}

namespace detail {

template <class Real>
void symmetric_swap(Matrix<Real>& s, std::size_t a, std::size_t b) {
  if (a == b) return;
  const std::size_t n = s.rows();
  for (std::size_t k = 0; k < n; ++k) std::swap(s(a, k), s(b, k));
  for (std::size_t k = 0; k < n; ++k) std::swap(s(k, a), s(k, b));
}

template <class Real>
Inertia two_by_two_inertia(const Real& a, const Real& b, const Real& c) {
  const Real det = a * c - b * b;
  const Real trace = a + c;
  if (det < 0) return {1, 0, 1};
  if (det > 0) return trace > 0 ? Inertia{2, 0, 0} : Inertia{0, 0, 2};
  if (trace > 0) return {1, 1, 0};
  if (trace < 0) return {0, 1, 1};
  return {0, 2, 0};
}

}  // namespace detail

/// Inertia by Bunch-Kaufman block congruence diagonalization.
///
/// A trailing block whose Frobenius norm is at most zero_tol * n * ||A||_F is
/// counted as zero; so is a single negligible column.
template <class Real>
Inertia inertia_ldl(const SymMatrix<Real>& A, const ToleranceContext& tol) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = A.order();
  Matrix<Real> s = A.dense();
  const Real thr = zero_threshold(frobenius_norm(s), n, tol);
  const Real alpha = (Real(1) + sqrt(Real(17))) / 8;
  Inertia in;
  std::size_t k = 0;
  while (k < n) {
    Real block(0);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) block += s(i, j) * s(i, j);
    if (sqrt(block) <= thr) {
      in.zero += static_cast<int>(n - k);
      break;
    }
    const Real absakk = abs(s(k, k));
    std::size_t imax = k;
    Real colmax(0);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (abs(s(i, k)) > colmax) {
        colmax = abs(s(i, k));
        imax = i;
      }
    }
    if (std::max<Real>(absakk, colmax) <= thr) {
      ++in.zero;
      ++k;
      continue;
    }
    std::size_t step = 1;
    std::size_t kp = k;
    if (absakk < alpha * colmax) {
      Real rowmax(0);
      for (std::size_t j = k; j < n; ++j) {
        if (j != imax) rowmax = std::max<Real>(rowmax, abs(s(imax, j)));
      }
      if (absakk * rowmax >= alpha * colmax * colmax) {
        kp = k;
      } else if (abs(s(imax, imax)) >= alpha * rowmax) {
        kp = imax;
      } else {
        kp = imax;
        step = 2;
      }
    }
    if (step == 1) {
      detail::symmetric_swap(s, k, kp);
      const Real d = s(k, k);
      if (abs(d) <= thr) {
        ++in.zero;
      } else if (d > 0) {
        ++in.pos;
      } else {
        ++in.neg;
      }
      if (d != 0) {
        for (std::size_t i = k + 1; i < n; ++i) {
          const Real f = s(i, k) / d;
          if (f == 0) continue;
          for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * s(k, j);
        }
      }
      k += 1;
    } else {
      detail::symmetric_swap(s, k + 1, kp);
      const Real a = s(k, k);
      const Real b = s(k, k + 1);
      const Real c = s(k + 1, k + 1);
      in = in + detail::two_by_two_inertia(a, b, c);
      const Real det = a * c - b * b;
      if (det != 0) {
        // Schur complement: S -= [x y] inv([[a b][b c]]) [x y]^T.
        for (std::size_t i = k + 2; i < n; ++i) {
          const Real xi = s(i, k);
          const Real yi = s(i, k + 1);
          const Real ui = (c * xi - b * yi) / det;
          const Real vi = (a * yi - b * xi) / det;
          for (std::size_t j = k + 2; j < n; ++j) s(i, j) -= ui * s(k, j) + vi * s(k + 1, j);
        }
      }
      k += 2;
    }
  }
  return in;
}

/// Exact inertia by symmetric Gaussian congruence over the rationals.
///
/// When every remaining diagonal entry vanishes but some a_ij does not,
/// row/column j is added into i, which makes the new a_ii = 2 a_ij nonzero.
inline Inertia exact_inertia(const SymMatrix<Rational>& A) {
  const std::size_t n = A.order();
  Matrix<Rational> s = A.dense();
  Inertia in;
  std::size_t k = 0;
  while (k < n) {
    std::size_t piv = n;
    for (std::size_t i = k; i < n; ++i) {
      if (s(i, i) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) {
      std::size_t oi = n;
      std::size_t oj = n;
      for (std::size_t i = k; i < n && oi == n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (s(i, j) != 0) {
            oi = i;
            oj = j;
            break;
          }
        }
      }
      if (oi == n) {
        in.zero += static_cast<int>(n - k);
        break;
      }
      // Congruence by I + e_j e_i^T: row_i += row_j, then col_i += col_j.
      for (std::size_t c = 0; c < n; ++c) s(oi, c) += s(oj, c);
      for (std::size_t r = 0; r < n; ++r) s(r, oi) += s(r, oj);
      piv = oi;
    }
    detail::symmetric_swap(s, k, piv);
    const Rational d = s(k, k);
    if (d > 0) {
      ++in.pos;
    } else {
      ++in.neg;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (s(i, k) == 0) continue;
      const Rational f = s(i, k) / d;
      for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * s(k, j);
    }
    ++k;
  }
  return in;
}

/// Exact determinant by Gaussian elimination over the rationals.
inline Rational exact_determinant(Matrix<Rational> a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      const Rational f = a(i, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
    }
  }
  return det;
}

/// Exact inertia of L_r for a positive integer r.
///
/// Uses the configuration's exact rationals, or the exact binary value of
/// each double when no rational form was supplied.
inline Inertia inertia_exact_integer(const PointConfig& config, const Exponent& r) {
  if (!r.is_integer()) throw InputError("exact inertia requires an integer exponent");
  if (*r.integer_value() < 1) throw InputError("exact inertia requires r >= 1");
  return exact_inertia(loewner_matrix<Rational>(config, r));
}

struct InertiaReport {
  Inertia by_eigen;
  Inertia by_ldl;
  std::optional<Inertia> by_exact;
  Inertia consensus;
  bool disagreement = false;
  /// Some eigenvalue sits within a factor 1e3 of the zero threshold on
  /// either side; the classification depends on the threshold choice.
  bool fragile = false;
};

namespace detail {

template <class Real>
bool spectrum_is_fragile(const Spectrum<Real>& s, const ToleranceContext& tol) {
  using std::abs;
  const Real thr = zero_threshold(s.max_abs(), s.eigenvalues.size(), tol);
  for (const auto& lam : s.eigenvalues) {
    const Real a = abs(lam);
    if (a > thr / 1000 && a <= thr * 1000) return true;
  }
  return false;
}

inline InertiaReport reconcile(const Inertia& eig, const Inertia& ldl, std::optional<Inertia> exact,
                               bool fragile) {
  InertiaReport rep;
  rep.by_eigen = eig;
  rep.by_ldl = ldl;
  rep.by_exact = exact;
  rep.fragile = fragile;
  rep.consensus = exact ? *exact : eig;
  rep.disagreement = !(eig == ldl) || (exact && !(*exact == eig));
  return rep;
}

}  // namespace detail

/// Runs the eigenvalue and LDL routes, plus the exact route when a hint
/// (configuration, integer exponent) names the Loewner matrix A represents.
template <class Real>
InertiaReport inertia(const SymMatrix<Real>& A, const ToleranceContext& tol,
                      const std::optional<std::pair<PointConfig, long>>& exact_hint = std::nullopt) {
  const auto spec = eig_sym(A, tol);
  const Inertia eig = inertia_from_spectrum(spec, tol);
  const Inertia ldl = inertia_ldl(A, tol);
  std::optional<Inertia> exact;
  if (exact_hint) exact = inertia_exact_integer(exact_hint->first, Exponent(static_cast<double>(exact_hint->second)));
  return detail::reconcile(eig, ldl, exact, detail::spectrum_is_fragile(spec, tol));
}

/// Result of an inertia computation that raises precision until the float
/// routes agree and no eigenvalue sits near the zero threshold.
struct RobustInertia {
  InertiaReport report;
  unsigned precision_bits = 53;
  std::string diagnostics;
};

inline std::vector<unsigned> precision_ladder(unsigned start, unsigned max_bits) {
  std::vector<unsigned> ladder{start};
  for (unsigned b : {256U, 1024U, 4096U}) {
    if (b > ladder.back() && b <= max_bits) ladder.push_back(b);
  }
  return ladder;
}

inline constexpr unsigned kMaxEscalationBits = 4096;

/// `build` is called as build(type_tag<Real>{}) and returns SymMatrix<Real>.
/// `accept`, when given, is an extra condition that must hold before the
/// ladder stops early (e.g. agreement with a predicted value).
template <class Build>
RobustInertia robust_inertia(Build&& build, const ToleranceContext& tol,
                             const std::function<bool(const Inertia&)>& accept = {},
                             unsigned max_bits = kMaxEscalationBits) {
  RobustInertia out;
  const auto ladder = precision_ladder(tol.precision_bits, std::max(max_bits, tol.precision_bits));
  for (std::size_t step = 0; step < ladder.size(); ++step) {
    const unsigned bits = ladder[step];
    const ToleranceContext t = tol.at_precision(bits);
    try {
      out.report = with_precision(bits, [&](auto tag) { return inertia(build(tag), t); });
      out.precision_bits = bits;
    } catch (const ConvergenceError& e) {
      out.diagnostics += "bits=" + std::to_string(bits) + ": " + e.what() + "; ";
      continue;
    }
    const bool ok = !out.report.disagreement && !out.report.fragile &&
                    (!accept || accept(out.report.consensus));
    if (ok) return out;
    out.diagnostics += "bits=" + std::to_string(bits) + ": eig=" + out.report.by_eigen.str() +
                       " ldl=" + out.report.by_ldl.str() +
                       (out.report.fragile ? " fragile" : "") + "; ";
  }
  return out;
}

}  // namespace loewner

#endif  // LOEWNER_INERTIA_HPP

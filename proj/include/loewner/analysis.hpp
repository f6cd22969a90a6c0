#ifndef LOEWNER_ANALYSIS_HPP
#define LOEWNER_ANALYSIS_HPP

// Zero counting for f(x) = sum_j c_j (x^r - p_j^r)/(x - p_j), sign-regularity
// scans over all minors, compound matrices, closed-form determinants of L_3
// and L_4 at three points, det L_z for complex z with an argument-principle
// scan, the Daleckii-Krein action X -> L_r o X with a sampled norm probe,
// and the comparison In [(p_i + p_j)^r] vs In L_{r+1}.

#include "loewner/builders.hpp"
#include "loewner/core_types.hpp"
#include "loewner/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace loewner {

// ---------------------------------------------------------------------------
// Zero counting
// ---------------------------------------------------------------------------

struct ComboFunction {
  PointConfig config;
  std::vector<double> coeffs;
  double r = 1;

  ComboFunction(PointConfig cfg, std::vector<double> c, double exponent)
      : config(std::move(cfg)), coeffs(std::move(c)), r(exponent) {
    if (coeffs.size() != config.size()) throw InputError("coefficient count must match point count");
    if (std::none_of(coeffs.begin(), coeffs.end(), [](double v) { return v != 0; })) {
      throw InputError("coefficients must not all be zero");
    }
    if (!(r > 0)) throw InputError("combination exponent must be positive");
  }
};

namespace detail {

/// f(x) and sum_j |c_j term_j(x)|.
inline std::pair<double, double> combo_value_and_scale(const ComboFunction& f, double x) {
  double value = 0;
  double scale = 0;
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
    const double p = f.config[j];
    const double term = x == p ? detail::power_derivative(p, f.r) : detail::divided_power(x, p, f.r);
    value += f.coeffs[j] * term;
    scale += std::fabs(f.coeffs[j] * term);
  }
  return {value, scale};
}

}  // namespace detail

inline double combo_eval(const ComboFunction& f, double x) {
  if (!(x > 0)) throw InputError("combination is defined on (0, inf) only");
  return detail::combo_value_and_scale(f, x).first;
}

struct ZeroScan {
  double lo = 0;  // 0: min(p) / 100
  double hi = 0;  // 0: 100 max(p)
  std::size_t points = 100000;
  int refine_levels = 3;
  /// |f| <= tol * sum_j |c_j term_j| counts as unresolved.
  double value_rel_tol = 1e-12;
};

struct ZeroCount {
  std::size_t count = 0;
  std::vector<std::pair<double, double>> brackets;
  std::size_t ambiguous = 0;
  std::size_t bound = 0;          // n - 1
  bool bound_applies = false;     // r not in {1, ..., n-1}
  bool within_bound = true;
};

/// Counts strict sign changes of f on a geometric grid. Samples whose value
/// is within the relative tolerance of zero are re-sampled on a finer
/// subgrid of their neighbouring cells (up to refine_levels times) and
/// otherwise reported as ambiguous.
inline ZeroCount count_zeros(const ComboFunction& f, ZeroScan scan = {}) {
  const auto& p = f.config.points();
  const double lo = scan.lo > 0 ? scan.lo : p.front() / 100;
  const double hi = scan.hi > 0 ? scan.hi : p.back() * 100;
  if (!(lo > 0) || !(hi > lo)) throw InputError("zero scan interval must lie in (0, inf)");
  if (scan.points < 2) throw InputError("zero scan needs at least two grid points");

  struct Sample {
    double x;
    int sign;
  };
  auto classify = [&](double x) {
    const auto [v, s] = detail::combo_value_and_scale(f, x);
    if (std::fabs(v) <= scan.value_rel_tol * s) return 0;
    return v > 0 ? 1 : -1;
  };

  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(scan.points - 1);
  std::vector<Sample> samples;
  samples.reserve(scan.points);
  for (std::size_t i = 0; i < scan.points; ++i) {
    const double x = i + 1 == scan.points ? hi : std::exp(log_lo + step * static_cast<double>(i));
    samples.push_back({x, classify(x)});
  }

  for (int level = 0; level < scan.refine_levels; ++level) {
    std::vector<Sample> refined;
    refined.reserve(samples.size());
    bool any = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i].sign != 0) {
        refined.push_back(samples[i]);
        continue;
      }
      any = true;
      const double a = i > 0 ? samples[i - 1].x : samples[i].x;
      const double b = i + 1 < samples.size() ? samples[i + 1].x : samples[i].x;
      constexpr int kSub = 10;
      for (int s = 1; s < kSub; ++s) {
        const double x = a * std::pow(b / a, static_cast<double>(s) / kSub);
        if (x == samples[i].x) continue;
        refined.push_back({x, classify(x)});
      }
      refined.push_back(samples[i]);
    }
    if (!any) break;
    std::sort(refined.begin(), refined.end(), [](const Sample& u, const Sample& v) { return u.x < v.x; });
    refined.erase(std::unique(refined.begin(), refined.end(),
                              [](const Sample& u, const Sample& v) { return u.x == v.x; }),
                  refined.end());
    samples = std::move(refined);
  }

  ZeroCount out;
  const Sample* last = nullptr;
  for (const auto& s : samples) {
    if (s.sign == 0) {
      ++out.ambiguous;
      continue;
    }
    if (last && last->sign != s.sign) {
      ++out.count;
      out.brackets.emplace_back(last->x, s.x);
    }
    last = &s;
  }
  const std::size_t n = f.config.size();
  out.bound = n - 1;
  const Exponent e(f.r);
  out.bound_applies = !(e.is_integer() && *e.integer_value() >= 1 &&
                        *e.integer_value() <= static_cast<long>(n) - 1);
  out.within_bound = !out.bound_applies || out.count <= out.bound;
  return out;
}

// ---------------------------------------------------------------------------
// Minors, compound matrices, sign regularity
// ---------------------------------------------------------------------------

/// All k-subsets of {0, ..., n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

template <class T>
Matrix<T> submatrix(const Matrix<T>& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  Matrix<T> s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
  return s;
}

/// Determinant: exact elimination for rationals, partial-pivot LU otherwise.
template <class T>
T determinant(Matrix<T> a) {
  if constexpr (is_rational_v<T>) {
    return exact_determinant(std::move(a));
  } else {
    using std::abs;
    if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    T det(1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (abs(a(i, k)) > abs(a(piv, k))) piv = i;
      if (a(piv, k) == 0) return T(0);
      if (piv != k) {
        for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
        det = -det;
      }
      det *= a(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const T f = a(i, k) / a(k, k);
        for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      }
    }
    return det;
  }
}

/// k-th compound: the C(n,k) x C(n,k) matrix of k x k minors, rows and
/// columns indexed by lexicographic subsets.
template <class T>
Matrix<T> compound_matrix(const Matrix<T>& a, std::size_t k) {
  if (k < 1 || k > std::min(a.rows(), a.cols())) throw InputError("compound order out of range");
  const auto rs = combinations(a.rows(), k);
  const auto cs = combinations(a.cols(), k);
  Matrix<T> c(rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) c(i, j) = determinant(submatrix(a, rs[i], cs[j]));
  return c;
}

enum class MinorSign { kPositive, kNegative, kMixed, kZero, kPartial };

inline const char* minor_sign_name(MinorSign s) {
  switch (s) {
    case MinorSign::kPositive: return "+";
    case MinorSign::kNegative: return "-";
    case MinorSign::kMixed: return "mixed";
    case MinorSign::kZero: return "zero";
    case MinorSign::kPartial: return "partial";
  }
  return "?";
}

struct MinorTally {
  std::size_t k = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  /// kPartial: some minors vanish and the rest share one strict sign.
  MinorSign sign() const {
    if (positive && negative) return MinorSign::kMixed;
    if (!positive && !negative) return MinorSign::kZero;
    if (zero) return MinorSign::kPartial;
    return positive ? MinorSign::kPositive : MinorSign::kNegative;
  }
  bool strict() const {
    const auto s = sign();
    return s == MinorSign::kPositive || s == MinorSign::kNegative;
  }
};

struct SsrReport {
  std::size_t order = 0;
  std::vector<MinorTally> per_k;
  /// Largest m such that every k x k minor, k <= m, is strictly of one sign.
  std::size_t ssr_order = 0;
  bool full_ssr = false;
  unsigned precision_bits = 53;  // 0 for exact minors

  std::string ssr_class() const {
    if (full_ssr) return "SSR";
    if (ssr_order == 0) return "none";
    return "SSR_" + std::to_string(ssr_order);
  }
};

inline constexpr std::size_t kMaxSsrOrder = 7;

/// Enumerates every k x k minor for k = 1..k_max. Float minors with
/// |det| <= zero_tol * (product of submatrix row norms) count as zero;
/// rational minors are classified exactly.
template <class T>
SsrReport ssr_scan(const Matrix<T>& a, std::size_t k_max, const ToleranceContext& tol) {
  using std::sqrt;
  const std::size_t dim = std::min(a.rows(), a.cols());
  if (std::max(a.rows(), a.cols()) > kMaxSsrOrder) throw InputError("minor enumeration limited to order <= 7");
  if (k_max == 0 || k_max > dim) k_max = dim;
  SsrReport rep;
  rep.order = dim;
  if constexpr (is_rational_v<T>) {
    rep.precision_bits = 0;
  } else {
    rep.precision_bits = mantissa_bits<T>();
  }
  for (std::size_t k = 1; k <= k_max; ++k) {
    MinorTally tally;
    tally.k = k;
    const auto rs = combinations(a.rows(), k);
    const auto cs = combinations(a.cols(), k);
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        const auto sub = submatrix(a, r, c);
        const T d = determinant(sub);
        int s = sign_of(d);
        if constexpr (!is_rational_v<T>) {
          T bound(1);
          for (std::size_t i = 0; i < k; ++i) {
            T row(0);
            for (std::size_t j = 0; j < k; ++j) row += sub(i, j) * sub(i, j);
            bound *= sqrt(row);
          }
          using std::abs;
          if (abs(d) <= tol.zero_tol<T>() * bound) s = 0;
        }
        if (s > 0) {
          ++tally.positive;
        } else if (s < 0) {
          ++tally.negative;
        } else {
          ++tally.zero;
        }
      }
    }
    rep.per_k.push_back(tally);
  }
  for (const auto& t : rep.per_k) {
    if (!t.strict()) break;
    rep.ssr_order = t.k;
  }
  rep.full_ssr = rep.ssr_order == dim;
  return rep;
}

/// SSR scan of L_r: exact minors for integer r. Otherwise float minors,
/// with the precision raised while any minor is classified zero (high-order
/// minors of clustered nodes underflow the threshold at 53 bits).
inline SsrReport ssr_scan_loewner(const PointConfig& config, const Exponent& r, std::size_t k_max,
                                  const ToleranceContext& tol, unsigned max_bits = kMaxEscalationBits) {
  if (r.is_integer()) return ssr_scan(loewner_matrix<Rational>(config, r).dense(), k_max, tol);
  SsrReport rep;
  for (unsigned bits : precision_ladder(tol.precision_bits, std::max(max_bits, tol.precision_bits))) {
    const auto t = tol.at_precision(bits);
    rep = with_precision(bits, [&](auto tag) {
      using Real = typename decltype(tag)::type;
      return ssr_scan(loewner_matrix<Real>(config, r).dense(), k_max, t);
    });
    rep.precision_bits = bits;
    const bool any_zero =
        std::any_of(rep.per_k.begin(), rep.per_k.end(), [](const MinorTally& m) { return m.zero > 0; });
    if (!any_zero) break;
  }
  return rep;
}

/// Smallest gap between distinct nonzero eigenvalues, relative to max|lambda|,
/// after zero classification. Returns +inf when fewer than two are nonzero.
template <class Real>
double min_nonzero_gap(const Spectrum<Real>& s, const ToleranceContext& tol) {
  using std::abs;
  const Real scale = s.max_abs();
  const Real thr = zero_threshold(scale, s.eigenvalues.size(), tol);
  std::vector<Real> nz;
  for (const auto& v : s.eigenvalues)
    if (abs(v) > thr) nz.push_back(v);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < nz.size(); ++i) {
    best = std::min(best, to_double<Real>((nz[i] - nz[i - 1]) / scale));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Closed-form determinants at three points
// ---------------------------------------------------------------------------

template <class T>
T det_closed_form_L3(const T& p1, const T& p2, const T& p3) {
  const T a = p1 - p2;
  const T b = p1 - p3;
  const T c = p2 - p3;
  return -(a * a) * (b * b) * (c * c);
}

template <class T>
T det_closed_form_L4(const T& p1, const T& p2, const T& p3) {
  const T a = p1 - p2;
  const T b = p1 - p3;
  const T c = p2 - p3;
  const T e1 = p1 + p2 + p3;
  const T e2 = p1 * p2 + p1 * p3 + p2 * p3;
  const T e3 = p1 * p2 * p3;
  return T(-2) * (a * a) * (b * b) * (c * c) * (e1 * e2 + e3);
}

namespace detail {
inline std::vector<Rational> three_points(const PointConfig& config) {
  if (config.size() != 3) throw InputError("closed-form determinants need exactly three points");
  return config.exact_or_dyadic();
}
}  // namespace detail

inline Rational det_closed_form_L3(const PointConfig& config) {
  const auto p = detail::three_points(config);
  return det_closed_form_L3(p[0], p[1], p[2]);
}

inline Rational det_closed_form_L4(const PointConfig& config) {
  const auto p = detail::three_points(config);
  return det_closed_form_L4(p[0], p[1], p[2]);
}

struct DetIdentityReport {
  Rational closed_L3;
  Rational exact_L3;
  Rational closed_L4;
  Rational exact_L4;
  bool match_L3 = false;
  bool match_L4 = false;
};

inline DetIdentityReport det_identity_check(const PointConfig& config) {
  DetIdentityReport rep;
  rep.closed_L3 = det_closed_form_L3(config);
  rep.closed_L4 = det_closed_form_L4(config);
  rep.exact_L3 = exact_determinant(loewner_matrix<Rational>(config, Exponent(3)).dense());
  rep.exact_L4 = exact_determinant(loewner_matrix<Rational>(config, Exponent(4)).dense());
  rep.match_L3 = rep.closed_L3 == rep.exact_L3;
  rep.match_L4 = rep.closed_L4 == rep.exact_L4;
  return rep;
}

// ---------------------------------------------------------------------------
// Complex exponents
// ---------------------------------------------------------------------------

using Complex = std::complex<double>;

/// L_z with p^z = exp(z log p) on the principal branch.
inline Matrix<Complex> complex_loewner(const PointConfig& config, Complex z) {
  const std::size_t n = config.size();
  std::vector<Complex> pz(n);
  std::vector<double> logp(n);
  for (std::size_t i = 0; i < n; ++i) {
    logp[i] = std::log(config[i]);
    pz[i] = std::exp(z * logp[i]);
  }
  Matrix<Complex> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = z * pz[i] / config[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) m(i, j) = (pz[i] - pz[j]) / (config[i] - config[j]);
    }
  }
  return m;
}

inline Complex complex_det(const PointConfig& config, Complex z) {
  auto a = complex_loewner(config, z);
  const std::size_t n = a.rows();
  Complex det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == Complex(0)) return Complex(0);
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
    }
  }
  return det;
}

struct Region {
  double re_min = -1;
  double re_max = 1;
  double im_min = -1;
  double im_max = 1;
};

struct ZeroCell {
  Region cell;
  int winding = 0;
  Complex estimate;  // mean of the enclosed zeros
};

struct ComplexZeroScan {
  Region region;  // as scanned (possibly shifted)
  std::vector<ZeroCell> cells;
  int total_winding = 0;
  int retries = 0;
  bool boundary_clean = true;
};

namespace detail {

struct ContourResult {
  double arg_change = 0;
  Complex log_moment{0, 0};  // sum of z d(log f)
  bool clean = true;
  double zero_floor = 0;  // |f| at or below this counts as a zero on the path
};

/// Walks a segment, bisecting until each step turns the argument by at most
/// pi/4; a zero on or extremely close to the path shows up as exhausted depth.
inline void walk_segment(const PointConfig& config, Complex a, Complex fa, Complex b, Complex fb, int depth,
                         ContourResult& acc) {
  if (!acc.clean) return;
  if (std::abs(fa) <= acc.zero_floor || std::abs(fb) <= acc.zero_floor || !std::isfinite(std::abs(fa)) ||
      !std::isfinite(std::abs(fb))) {
    acc.clean = false;
    return;
  }
  const double darg = std::arg(fb / fa);
  if (std::fabs(darg) > std::numbers::pi / 4) {
    if (depth >= 40) {
      acc.clean = false;
      return;
    }
    const Complex m = (a + b) / 2.0;
    const Complex fm = complex_det(config, m);
    walk_segment(config, a, fa, m, fm, depth + 1, acc);
    walk_segment(config, m, fm, b, fb, depth + 1, acc);
    return;
  }
  acc.arg_change += darg;
  const Complex dlog(std::log(std::abs(fb) / std::abs(fa)), darg);
  acc.log_moment += (a + b) / 2.0 * dlog;
}

// Samples whose modulus falls 1e-10 below the largest sample on the same
// contour are treated as zeros sitting on the path. On the real axis f is
// real, so an even-order zero there never turns the argument and would
// otherwise slip through.
inline ContourResult rectangle_contour(const PointConfig& config, const Region& r, int samples_per_edge) {
  const Complex corners[4] = {{r.re_min, r.im_min}, {r.re_max, r.im_min}, {r.re_max, r.im_max}, {r.re_min, r.im_max}};
  std::vector<Complex> zs;
  for (int e = 0; e < 4; ++e) {
    const Complex a = corners[e];
    const Complex b = corners[(e + 1) % 4];
    for (int s = 0; s < samples_per_edge; ++s) zs.push_back(a + (b - a) * (static_cast<double>(s) / samples_per_edge));
  }
  std::vector<Complex> fs;
  double fmax = 0;
  for (const auto& z : zs) {
    fs.push_back(complex_det(config, z));
    fmax = std::max(fmax, std::abs(fs.back()));
  }
  ContourResult acc;
  acc.zero_floor = 1e-10 * fmax;
  for (std::size_t i = 0; i < zs.size() && acc.clean; ++i) {
    const std::size_t j = (i + 1) % zs.size();
    walk_segment(config, zs[i], fs[i], zs[j], fs[j], 0, acc);
  }
  return acc;
}

}  // namespace detail

/// Argument-principle scan: winding of det L_z around each grid cell. Cells
/// with nonzero winding report the contour estimate of the mean enclosed
/// zero. A zero on a cell boundary shifts the whole grid and retries.
inline ComplexZeroScan complex_zero_scan(const PointConfig& config, Region region, std::size_t nx,
                                         std::size_t ny, int max_retries = 3) {
  if (!(region.re_max > region.re_min) || !(region.im_max > region.im_min)) {
    throw InputError("complex scan region is empty");
  }
  if (nx == 0 || ny == 0) throw InputError("complex scan grid needs at least one cell");
  const double hx = (region.re_max - region.re_min) / static_cast<double>(nx);
  const double hy = (region.im_max - region.im_min) / static_cast<double>(ny);
  constexpr int kSamplesPerEdge = 32;
  ComplexZeroScan out;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    const double shift = 0.0137 * attempt;
    Region shifted{region.re_min + shift * hx, region.re_max + shift * hx, region.im_min + shift * hy,
                   region.im_max + shift * hy};
    out = ComplexZeroScan{};
    out.region = shifted;
    out.retries = attempt;
    bool clean = true;
    for (std::size_t ix = 0; ix < nx && clean; ++ix) {
      for (std::size_t iy = 0; iy < ny && clean; ++iy) {
        Region cell{shifted.re_min + hx * static_cast<double>(ix), shifted.re_min + hx * static_cast<double>(ix + 1),
                    shifted.im_min + hy * static_cast<double>(iy), shifted.im_min + hy * static_cast<double>(iy + 1)};
        const auto c = detail::rectangle_contour(config, cell, kSamplesPerEdge);
        if (!c.clean) {
          clean = false;
          break;
        }
        const int w = static_cast<int>(std::lround(c.arg_change / (2 * std::numbers::pi)));
        if (w != 0) {
          const Complex sum = c.log_moment / Complex(0, 2 * std::numbers::pi);
          out.cells.push_back({cell, w, sum / static_cast<double>(w)});
          out.total_winding += w;
        }
      }
    }
    out.boundary_clean = clean;
    if (clean) return out;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Daleckii-Krein action
// ---------------------------------------------------------------------------

/// L_r o X (entrywise product).
template <class Real>
SymMatrix<Real> dk_apply(const PointConfig& config, const Exponent& r, const SymMatrix<Real>& x) {
  if (x.order() != config.size()) throw InputError("Daleckii-Krein: dimension mismatch");
  const auto L = loewner_matrix<Real>(config, r);
  SymMatrix<Real> out(x.order());
  for (std::size_t i = 0; i < x.order(); ++i)
    for (std::size_t j = 0; j <= i; ++j) out.set(i, j, L(i, j) * x(i, j));
  return out;
}

struct DkProbe {
  double bound = 0;      // max sampled ||L_r o X|| over ||X|| = 1
  double reference = 0;  // ||r A^{r-1}|| = max_i |r p_i^{r-1}|
  std::size_t samples = 0;
};

/// Sampled lower bound on the norm of X -> L_r o X (spectral norms), with
/// X = I always included.
inline DkProbe dk_norm_probe(const PointConfig& config, const Exponent& r, std::size_t samples,
                             std::uint64_t seed) {
  if (samples < 1) throw InputError("norm probe needs at least one sample");
  const std::size_t n = config.size();
  const ToleranceContext tol;
  auto spectral = [&](const SymMatrix<double>& m) { return eig_sym(m, tol).max_abs(); };
  DkProbe out;
  for (std::size_t i = 0; i < n; ++i) {
    out.reference = std::max(out.reference, std::fabs(detail::power_derivative(config[i], r.value())));
  }
  out.bound = spectral(dk_apply<double>(config, r, SymMatrix<double>::identity(n)));
  out.samples = 1;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t s = 1; s < samples; ++s) {
    SymMatrix<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) x.set(i, j, gauss(rng));
    const double nx = spectral(x);
    if (nx == 0) continue;
    SymMatrix<double> unit(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) unit.set(i, j, x(i, j) / nx);
    out.bound = std::max(out.bound, spectral(dk_apply<double>(config, r, unit)));
    ++out.samples;
  }
  return out;
}

// ---------------------------------------------------------------------------
// [(p_i + p_j)^r] vs L_{r+1}
// ---------------------------------------------------------------------------

struct PrComparison {
  Inertia power_sum;
  Inertia loewner_next;
  bool match = false;
  bool exact = false;
  unsigned precision_bits = 53;
};

inline PrComparison pr_compare(const PointConfig& config, const Exponent& r, const ToleranceContext& tol) {
  if (!(r.value() > 0)) throw InputError("power-sum comparison requires r > 0");
  PrComparison out;
  const Exponent next(r.value() + 1);
  if (r.is_integer()) {
    out.exact = true;
    out.power_sum = exact_inertia(power_sum_matrix<Rational>(config, r));
    out.loewner_next = exact_inertia(loewner_matrix<Rational>(config, next));
  } else {
    const auto ps = robust_inertia(
        [&](auto tag) {
          using Real = typename decltype(tag)::type;
          return power_sum_matrix<Real>(config, r);
        },
        tol);
    const auto ln = robust_inertia(
        [&](auto tag) {
          using Real = typename decltype(tag)::type;
          return loewner_matrix<Real>(config, next);
        },
        tol);
    out.power_sum = ps.report.consensus;
    out.loewner_next = ln.report.consensus;
    out.precision_bits = std::max(ps.precision_bits, ln.precision_bits);
  }
  out.match = out.power_sum == out.loewner_next;
  return out;
}

}  // namespace loewner

#endif  // LOEWNER_ANALYSIS_HPP

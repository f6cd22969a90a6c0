#ifndef LOEWNER_SWEEP_HPP
#define LOEWNER_SWEEP_HPP

// Eigenvalue trajectories of L_r over a uniform exponent grid, the list of
// inertia changes along the grid, and a tabular signed-log rendering.

#include "loewner/builders.hpp"
#include "loewner/core_types.hpp"
#include "loewner/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace loewner {

struct SweepPoint {
  double r = 0;
  bool integer_snapped = false;  // exact inertia route used
  std::vector<BigReal> eigenvalues;  // ascending
  Inertia inertia;
  unsigned precision_bits = 53;
  std::string error;  // non-empty when the point could not be computed
};

struct SpectrumSweep {
  PointConfig config;
  ToleranceContext tol;
  std::vector<SweepPoint> points;

  std::vector<double> grid() const {
    std::vector<double> g;
    for (const auto& p : points) g.push_back(p.r);
    return g;
  }
  std::vector<Inertia> inertias() const {
    std::vector<Inertia> in;
    for (const auto& p : points) in.push_back(p.inertia);
    return in;
  }
};

inline constexpr double kIntegerSnapWindow = 1e-9;

/// Precision used by sweeps before any per-point escalation: 256 bits once
/// n >= 6, where the smallest eigenvalues between integers get tiny.
inline unsigned sweep_base_bits(std::size_t n, const ToleranceContext& tol) {
  return n >= 6 ? std::max(tol.precision_bits, 256U) : tol.precision_bits;
}

namespace detail {

template <class Real>
std::vector<BigReal> widen(const std::vector<Real>& v) {
  PrecisionScope scope(std::max(64U, mantissa_bits<Real>()));
  std::vector<BigReal> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

inline SweepPoint sweep_point(const PointConfig& config, double r_raw, const ToleranceContext& tol,
                              unsigned base_bits) {
  SweepPoint pt;
  const double nearest = std::nearbyint(r_raw);
  const bool snap = std::fabs(r_raw - nearest) < kIntegerSnapWindow;
  pt.r = snap ? nearest : r_raw;
  pt.integer_snapped = snap;
  const Exponent e(pt.r);
  try {
    for (unsigned bits : precision_ladder(base_bits, std::max(base_bits, kMaxEscalationBits))) {
      const ToleranceContext t = tol.at_precision(bits);
      bool settled = false;
      with_precision(bits, [&](auto tag) {
        using Real = typename decltype(tag)::type;
        const auto L = loewner_matrix<Real>(config, e);
        const auto spec = eig_sym(L, t);
        pt.eigenvalues = widen(spec.eigenvalues);
        pt.precision_bits = bits;
        if (snap) {
          pt.inertia = exact_inertia(loewner_matrix<Rational>(config, e));
          settled = true;
          return;
        }
        pt.inertia = inertia_from_spectrum(spec, t);
        settled = !detail::spectrum_is_fragile(spec, t) && inertia_ldl(L, t) == pt.inertia;
      });
      if (settled) break;
    }
  } catch (const ConvergenceError& err) {
    pt.error = err.what();
  }
  return pt;
}

}  // namespace detail

/// Eigenvalues and inertia of L_r on a uniform grid of `steps` points over
/// [r_min, r_max]. Grid values within 1e-9 of an integer are replaced by
/// that integer and their inertia is computed exactly.
inline SpectrumSweep eigen_trajectories(const PointConfig& config, double r_min, double r_max, std::size_t steps,
                                        const ToleranceContext& tol) {
  tol.validate();
  if (!(r_min < r_max)) throw InputError("sweep range must satisfy r_min < r_max");
  if (steps < 2) throw InputError("sweep needs at least two grid points");
  SpectrumSweep sweep{config, tol, {}};
  const unsigned base = sweep_base_bits(config.size(), tol);
  const double h = (r_max - r_min) / static_cast<double>(steps - 1);
  sweep.points.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    const double r = i + 1 == steps ? r_max : r_min + h * static_cast<double>(i);
    sweep.points.push_back(detail::sweep_point(config, r, tol, base));
  }
  return sweep;
}

/// Sweep over an explicit list of exponents (same per-point rules).
inline SpectrumSweep eigen_trajectories_at(const PointConfig& config, const std::vector<double>& grid,
                                           const ToleranceContext& tol) {
  tol.validate();
  if (grid.empty()) throw InputError("sweep grid is empty");
  SpectrumSweep sweep{config, tol, {}};
  const unsigned base = sweep_base_bits(config.size(), tol);
  for (double r : grid) sweep.points.push_back(detail::sweep_point(config, r, tol, base));
  return sweep;
}

struct InertiaChange {
  double r_before = 0;
  double r_after = 0;
  Inertia before;
  Inertia after;
  std::optional<long> bracketed_integer;
  bool anomalous = false;
};

/// Consecutive grid points whose inertias differ. A change is expected only
/// across a singular exponent m with |m| <= n-1 (including m = 0).
inline std::vector<InertiaChange> sign_change_report(const SpectrumSweep& s) {
  std::vector<InertiaChange> out;
  const long limit = static_cast<long>(s.config.size()) - 1;
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    const auto& a = s.points[i - 1];
    const auto& b = s.points[i];
    if (!a.error.empty() || !b.error.empty() || a.inertia == b.inertia) continue;
    InertiaChange c{a.r, b.r, a.inertia, b.inertia, std::nullopt, true};
    const double lo = std::min(a.r, b.r);
    const double hi = std::max(a.r, b.r);
    for (long m = static_cast<long>(std::ceil(lo)); m <= static_cast<long>(std::floor(hi)); ++m) {
      if (m >= -limit && m <= limit) {
        c.bracketed_integer = m;
        c.anomalous = false;
        break;
      }
    }
    out.push_back(c);
  }
  return out;
}

/// Steps i (between points i and i+1) whose largest sorted-eigenvalue move,
/// relative to the local spectral scale, exceeds `factor` times the median
/// move. Such steps suggest the grid under-resolves the trajectories.
inline std::vector<std::size_t> trajectory_jumps(const SpectrumSweep& s, double factor = 10.0) {
  std::vector<double> moves;
  for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
    const auto& a = s.points[i].eigenvalues;
    const auto& b = s.points[i + 1].eigenvalues;
    if (a.size() != b.size() || a.empty()) {
      moves.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    double scale = 0;
    double move = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      scale = std::max({scale, std::fabs(a[k].convert_to<double>()), std::fabs(b[k].convert_to<double>())});
      move = std::max(move, std::fabs(BigReal(b[k] - a[k]).convert_to<double>()));
    }
    moves.push_back(scale > 0 ? move / scale : 0.0);
  }
  std::vector<double> finite;
  for (double m : moves)
    if (std::isfinite(m)) finite.push_back(m);
  std::vector<std::size_t> out;
  if (finite.empty()) return out;
  std::nth_element(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(finite.size() / 2), finite.end());
  const double median = finite[finite.size() / 2];
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!std::isfinite(moves[i]) || moves[i] > factor * median) out.push_back(i);
  }
  return out;
}

enum class Scaling { kNone, kSignedLog };

struct FigureOptions {
  Scaling scaling = Scaling::kSignedLog;
  /// Signed-log scale tau; when unset, the zero threshold of the largest
  /// eigenvalue in the sweep at the sweep's base precision.
  std::optional<double> tau;
};

/// y = sign(lambda) log10(1 + |lambda| / tau).
template <class Real>
Real signed_log(const Real& lambda, const Real& tau) {
  using std::abs;
  using std::log10;
  const Real y = log10(Real(1) + abs(lambda) / tau);
  return lambda < 0 ? Real(-y) : y;
}

struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
  }
};

/// Rows (r, y_1..y_n, pos, zero, neg) in grid order. Raw eigenvalues are
/// printed at their working precision; signed-log values as doubles.
inline FigureTable emit_figure1(const SpectrumSweep& s, const FigureOptions& opt = {}) {
  const std::size_t n = s.config.size();
  FigureTable t;
  t.header.push_back("r");
  for (std::size_t i = 1; i <= n; ++i) t.header.push_back("lambda_" + std::to_string(i));
  t.header.insert(t.header.end(), {"pos", "zero", "neg"});

  unsigned max_bits = 64;
  for (const auto& p : s.points) max_bits = std::max(max_bits, p.precision_bits);
  PrecisionScope scope(max_bits);

  BigReal tau(0);
  if (opt.scaling == Scaling::kSignedLog) {
    if (opt.tau) {
      if (!(*opt.tau > 0)) throw InputError("signed-log tau must be positive");
      tau = BigReal(*opt.tau);
    } else {
      BigReal scale(0);
      for (const auto& p : s.points)
        for (const auto& v : p.eigenvalues) scale = std::max<BigReal>(scale, abs(v));
      const unsigned base = sweep_base_bits(n, s.tol);
      tau = BigReal(s.tol.zero_rel_tol) * pow2<BigReal>(53L - static_cast<long>(base)) * scale *
            BigReal(static_cast<double>(n));
      if (tau == 0) tau = BigReal(1);
    }
  }

  for (const auto& p : s.points) {
    std::vector<std::string> row;
    row.push_back(to_decimal(p.r));
    for (std::size_t i = 0; i < n; ++i) {
      if (i >= p.eigenvalues.size()) {
        row.emplace_back("nan");
        continue;
      }
      const BigReal& lam = p.eigenvalues[i];
      if (opt.scaling == Scaling::kSignedLog) {
        row.push_back(to_decimal(signed_log(lam, tau).convert_to<double>()));
      } else if (p.precision_bits <= 53) {
        row.push_back(to_decimal(lam.convert_to<double>()));
      } else {
        row.push_back(to_decimal(lam));
      }
    }
    row.push_back(std::to_string(p.inertia.pos));
    row.push_back(std::to_string(p.inertia.zero));
    row.push_back(std::to_string(p.inertia.neg));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace loewner

#endif  // LOEWNER_SWEEP_HPP

#ifndef LOEWNER_IO_HPP
#define LOEWNER_IO_HPP

// Text parsing for point lists, real lists and ranges.

#include "loewner/core_types.hpp"

#include <charconv>
#include <cmath>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace loewner {

namespace detail {

inline std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Parses a finite real, rejecting trailing garbage.
inline double parse_real(const std::string& token) {
  std::string t = detail::trim(token);
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw InputError("not a finite number: '" + token + "'");
  }
  return v;
}

inline std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : detail::split(text, ',')) out.push_back(parse_real(tok));
  return out;
}

/// Integer or fraction literal such as "3", "-2" or "7/2".
inline bool is_rational_literal(const std::string& token) {
  static const std::regex re(R"(^[+-]?[0-9]+(/[0-9]+)?$)");
  return std::regex_match(detail::trim(token), re);
}

/// Comma-separated points. When every entry is an integer or fraction the
/// configuration keeps exact values; otherwise all entries are floats.
inline PointConfig parse_points(const std::string& text) {
  const auto tokens = detail::split(text, ',');
  bool all_exact = true;
  for (const auto& t : tokens) all_exact = all_exact && is_rational_literal(t);
  if (all_exact) {
    std::vector<Rational> q;
    for (const auto& t : tokens) {
      std::string s = detail::trim(t);
      if (s.front() == '+') s.erase(0, 1);
      const auto slash = s.find('/');
      if (slash != std::string::npos && Integer(s.substr(slash + 1)) == 0) {
        throw InputError("zero denominator in '" + s + "'");
      }
      q.emplace_back(s);
    }
    return PointConfig::from_rationals(std::move(q));
  }
  std::vector<double> v;
  for (const auto& t : tokens) {
    v.push_back(parse_real(t));
  }
  return PointConfig::from_reals(std::move(v));
}

struct RealRange {
  double lo = 0;
  double hi = 0;
  std::size_t steps = 0;
};

/// "a:b:steps" with a < b and steps >= 2.
inline RealRange parse_range(const std::string& text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3) throw InputError("range must look like a:b:steps");
  RealRange r{parse_real(parts[0]), parse_real(parts[1]), 0};
  const std::string s = detail::trim(parts[2]);
  unsigned long long steps = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), steps);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InputError("range step count must be a positive integer");
  }
  r.steps = static_cast<std::size_t>(steps);
  if (!(r.lo < r.hi)) throw InputError("range is empty: need a < b");
  if (r.steps < 2) throw InputError("range needs at least two steps");
  return r;
}

inline std::vector<double> range_grid(const RealRange& r) {
  std::vector<double> g(r.steps);
  const double h = (r.hi - r.lo) / static_cast<double>(r.steps - 1);
  for (std::size_t i = 0; i < r.steps; ++i) g[i] = i + 1 == r.steps ? r.hi : r.lo + h * static_cast<double>(i);
  return g;
}

}  // namespace loewner

#endif  // LOEWNER_IO_HPP

#ifndef LOEWNER_SCALAR_HPP
#define LOEWNER_SCALAR_HPP

// Scalar policy: working reals are either `double` (53-bit) or an MPFR float
// whose mantissa width is chosen at runtime through PrecisionScope. Exact
// computations use GMP rationals.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace loewner {

using BigReal = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Bad caller input (malformed configuration, violated precondition).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative solver failed to converge at the working precision.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
struct type_tag {
  using type = T;
};

template <class T>
inline constexpr bool is_big_real_v = std::is_same_v<T, BigReal>;

inline unsigned digits10_for_bits(unsigned bits) {
  // ceil(bits * log10(2))
  return static_cast<unsigned>((static_cast<unsigned long>(bits) * 30103UL + 99999UL) /
                               100000UL);
}

/// Sets the MPFR working precision for the lifetime of the object.
///
/// The precision is process-global (Boost's variable-precision MPFR type keeps
/// one default), so scopes must be used from a single thread at a time.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(BigReal::default_precision()) {
    BigReal::default_precision(digits10_for_bits(bits));
  }
  ~PrecisionScope() { BigReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Runs `f(type_tag<Real>{})` with Real = double for bits <= 53, otherwise
/// with BigReal at (at least) `bits` of mantissa.
template <class F>
decltype(auto) with_precision(unsigned bits, F&& f) {
  if (bits <= 53) return std::forward<F>(f)(type_tag<double>{});
  PrecisionScope scope(bits);
  return std::forward<F>(f)(type_tag<BigReal>{});
}

template <class Real>
unsigned mantissa_bits() {
  if constexpr (is_big_real_v<Real>) {
    BigReal probe;
    return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
  } else {
    return std::numeric_limits<Real>::digits;
  }
}

/// Unit roundoff-scale epsilon of the active working precision.
template <class Real>
Real epsilon() {
  if constexpr (is_big_real_v<Real>) {
    return ldexp(BigReal(1), 1 - static_cast<int>(mantissa_bits<BigReal>()));
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

template <class Real>
Real to_real(double v) {
  return Real(v);
}

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (is_big_real_v<Real>) {
    return BigReal(q);
  } else {
    return q.template convert_to<Real>();
  }
}

template <class Real>
double to_double(const Real& v) {
  if constexpr (std::is_floating_point_v<Real>) {
    return static_cast<double>(v);
  } else {
    return v.template convert_to<double>();
  }
}

/// 2^e in the working type; stays finite for large |e| with MPFR.
template <class Real>
Real pow2(long e) {
  using std::ldexp;
  return ldexp(Real(1), static_cast<int>(e));
}

/// Shortest decimal string that reads back to the same value.
inline std::string to_decimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string to_decimal(const BigReal& v) {
  if (v == 0) return "0";
  const auto prec = static_cast<unsigned>(mpfr_get_prec(v.backend().data()));
  // Enough digits for a round trip at the value's own precision.
  const std::streamsize digits = digits10_for_bits(prec) + 2;
  return v.str(digits, std::ios_base::scientific);
}

inline std::string to_decimal(const Rational& q) { return q.str(); }

/// Exact rational value of a finite double (every double is dyadic).
inline Rational exact_rational(double v) {
  if (!std::isfinite(v)) throw InputError("non-finite value has no rational form");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // mant * 2^53 is an integer for any double.
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  Rational q{Integer(scaled)};
  const int shift = exp - 53;
  Integer two_pow = Integer(1) << std::abs(shift);
  if (shift >= 0) return q * Rational(two_pow);
  return q / Rational(two_pow);
}

inline Rational pow_int(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw InputError("zero raised to a negative power");
    return Rational(1) / pow_int(base, -e);
  }
  Rational result(1);
  Rational b = base;
  auto k = static_cast<unsigned long>(e);
  while (k != 0) {
    if (k & 1UL) result *= b;
    k >>= 1;
    if (k != 0) b *= b;
  }
  return result;
}

template <class T>
int sign_of(const T& v) {
  return (v > 0) - (v < 0);
}

}  // namespace loewner

#endif  // LOEWNER_SCALAR_HPP

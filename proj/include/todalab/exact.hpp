#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace todalab {

/// Arbitrary-precision rational. GMP keeps every result in lowest terms with a
/// positive denominator, so equality is structural.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline double magnitude(const Rational& r) { return std::fabs(r.get_d()); }
inline double magnitude(double x) { return std::fabs(x); }

inline Rational abs_value(const Rational& r) { return abs(r); }
inline double abs_value(double x) { return std::fabs(x); }

/// Scalar-level helpers shared by the exact and the binary64 instantiations.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static Rational fraction(long num, long den) { return make_rational(num, den); }
  static Rational exp(const Rational&) {
    throw std::domain_error("exp is not representable in exact arithmetic");
  }
  static Rational sqrt(const Rational&) {
    throw std::domain_error("sqrt is not representable in exact arithmetic");
  }
  static Rational from_double(double) {
    throw std::domain_error("binary64 value cannot enter exact arithmetic");
  }
  static Rational from_rational(const Rational& r) { return r; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double fraction(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double exp(double x) { return std::exp(x); }
  static double sqrt(double x) { return std::sqrt(x); }
  static double from_double(double x) { return x; }
  static double from_rational(const Rational& r) { return r.get_d(); }
};

}  // namespace todalab

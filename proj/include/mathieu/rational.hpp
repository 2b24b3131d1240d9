#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <functional>
#include <string>

namespace mathieu {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Software floating point with 50 decimal digits; the extended tier.
using Extended = boost::multiprecision::cpp_bin_float_50;

/// Progress hook for long exact computations: (done, total). Returning false
/// cancels the computation with mathieu::Cancelled.
using ProgressFn = std::function<bool(int, int)>;

inline Rational rat(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

template <class Real>
Real to_real(const Rational& q) {
  if constexpr (std::is_same_v<Real, double>) {
    return q.convert_to<double>();
  } else {
    return Real(numerator_of(q).str()) / Real(denominator_of(q).str());
  }
}

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& s);

Rational factorial(int n);
Rational binomial(const Rational& a, int k);
Rational pow(const Rational& base, int exponent);

/// Gamma(k + 1/2) / sqrt(pi) for any integer k.
Rational gamma_half_ratio(int k);

}  // namespace mathieu

#pragma once

// Arbitrary-precision rationals used for every exact probability in the library.

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace montyq {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational frac(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt numerator_of(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt denominator_of(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// Accepts "num/den", an integer, or a decimal literal. Decimals are only
// accepted when they are exactly dyadic (0.25, 0.375, ...); anything else
// throws std::invalid_argument asking for fraction form.
Rational parse_rational(std::string_view text);

// "3/11", "-1/7", "0", "2"
std::string to_string(const Rational& r);

double to_double(const Rational& r);

}  // namespace montyq

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace efx {

using Int = boost::multiprecision::cpp_int;

// Exact rational: arbitrary-precision, always in lowest terms with positive denominator
// (cpp_rational maintains both invariants on every operation). Every comparison made anywhere
// in this project is exact; there is no floating-point mode.
using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", a decimal like "2.25" (exact decimal fraction), or a plain integer.
// Optional leading '-' is accepted (callers wanting positivity check separately).
// Throws parse_error on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical serialization "p/q" with the denominator always spelled out, e.g. "1539/1".
std::string rational_str(const Rational& r);

// r^k for k >= 0 (r^0 = 1).
Rational rational_pow(const Rational& r, unsigned k);

// Largest rational p/2^bits with p = floor(2^bits * sqrt(r)); a lower bound on sqrt(r) for r >= 0.
// Used to certify inequalities that mention sqrt(eps) without leaving exact arithmetic.
Rational sqrt_lower_bound(const Rational& r, unsigned bits = 48);

} // namespace efx

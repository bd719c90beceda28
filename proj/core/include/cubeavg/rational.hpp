#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cubeavg {

// All measure weights, function values and integrals are exact rationals.
// Floating point shows up only when taking 2^d-th roots for display.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q" or a plain integer string. Throws BadConfig on garbage.
Rational parse_rational(const std::string& s);

/// Renders as "p/q", or "p" when the denominator is 1.
std::string rational_string(const Rational& r);

double to_double(const Rational& r);

Rational rational_pow(const Rational& base, unsigned exp);

Rational rational_abs(const Rational& r);

}  // namespace cubeavg

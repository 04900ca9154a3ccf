#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dpp {

// All probability and value arithmetic is exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical wire form is always "num/den" with den > 0 and gcd(num, den) = 1.
std::string format_rational(const Rational& q);

// Accepts "num/den" or a bare integer "num". Throws ParseError on anything else.
Rational parse_rational(const std::string& text, const std::string& where);

}  // namespace dpp

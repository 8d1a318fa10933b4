#ifndef CBR_RATIONAL_HPP
#define CBR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace cbr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "p", "-p" or "p/q" (q != 0). Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& r);

// Fixed-point decimal with the given number of fractional digits,
// rounded half away from zero. Display-only.
std::string to_decimal_string(const Rational& r, int digits = 12);

}  // namespace cbr

#endif

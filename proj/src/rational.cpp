#include "cbr/rational.hpp"

#include <cctype>

namespace cbr {

namespace {

bool parse_integer(const std::string& s, BigInt* out) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  *out = BigInt(s);
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  BigInt num, den = 1;
  if (slash == std::string::npos) {
    if (!parse_integer(text, &num)) return std::nullopt;
  } else {
    if (!parse_integer(text.substr(0, slash), &num)) return std::nullopt;
    if (!parse_integer(text.substr(slash + 1), &den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const bool negative = num < 0;
  if (negative) num = -num;

  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half away from zero
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;

  std::string frac_str = frac.str();
  frac_str.insert(frac_str.begin(), digits - frac_str.size(), '0');

  std::string out = negative && (whole != 0 || frac != 0) ? "-" : "";
  out += whole.str();
  if (digits > 0) out += "." + frac_str;
  return out;
}

}  // namespace cbr

#include "projmet/numeric.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include "projmet/error.hpp"

namespace projmet {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// [sign] digits [. digits] [eE [sign] digits]
Rational parse_decimal(const std::string& text) {
  std::size_t pos = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  for (; pos < n; ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail(ErrorCode::InvalidSpec, "malformed number '" + text + "'");
  long exponent = 0;
  if (pos < n && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool exp_neg = false;
    if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
      exp_neg = text[pos] == '-';
      ++pos;
    }
    if (pos == n) fail(ErrorCode::InvalidSpec, "malformed exponent in '" + text + "'");
    for (; pos < n; ++pos) {
      if (text[pos] < '0' || text[pos] > '9')
        fail(ErrorCode::InvalidSpec, "malformed exponent in '" + text + "'");
      exponent = exponent * 10 + (text[pos] - '0');
      if (exponent > 4096) fail(ErrorCode::InvalidSpec, "exponent out of range");
    }
    if (exp_neg) exponent = -exponent;
  }
  if (pos != n) fail(ErrorCode::InvalidSpec, "malformed number '" + text + "'");

  BigInt mantissa(digits);
  long net = exponent - frac_len;
  BigInt num = mantissa, den = 1;
  if (net > 0)
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(net));
  else if (net < 0)
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-net));
  Rational r(num, den);
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  Rational num = parse_decimal(text.substr(0, slash));
  Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::InvalidSpec, "zero denominator in '" + text + "'");
  return num / den;
}

std::string rational_to_string(const Rational& v) {
  std::string s = boost::multiprecision::numerator(v).str();
  if (boost::multiprecision::denominator(v) != 1)
    s += "/" + boost::multiprecision::denominator(v).str();
  return s;
}

}  // namespace projmet

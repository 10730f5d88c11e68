#include "booknum/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace booknum {

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(x, &exp);
  // frac * 2^53 is an integer for every finite double.
  const auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  BigInt num(mant);
  BigInt den(1);
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return Rational(num, den);
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(BigInt(s.substr(0, slash)), den);
  }
  std::string digits;
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
  int scale = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == 'e' || c == 'E') {
      scale += std::stoi(s.substr(i + 1));
      break;
    } else {
      throw std::invalid_argument("parse_rational: bad number '" + s + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("parse_rational: bad number '" + s + "'");
  BigInt num(digits);
  if (negative) num = -num;
  BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(scale)));
  return scale >= 0 ? Rational(num * pow10) : Rational(num, pow10);
}

BigInt floor_of(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil_of(const Rational& r) { return -floor_of(-r); }

std::string to_string(const Rational& r) {
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return r.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace booknum

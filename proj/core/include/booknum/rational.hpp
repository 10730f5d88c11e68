#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace booknum {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact value of a finite double. Throws std::invalid_argument on NaN or infinity.
[[nodiscard]] Rational exact_rational(double x);

/// Parses "p/q", an integer, or a decimal such as "-12.5e3" exactly.
[[nodiscard]] Rational parse_rational(const std::string& s);

[[nodiscard]] BigInt floor_of(const Rational& r);
[[nodiscard]] BigInt ceil_of(const Rational& r);

/// "p/q", or "p" when the denominator is 1.
[[nodiscard]] std::string to_string(const Rational& r);

[[nodiscard]] double to_double(const Rational& r);

}  // namespace booknum

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lkq {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q", integers and decimal literals (with optional exponent) exactly.
// Throws Error(Input) on malformed text.
Rational parse_rational(std::string_view text);

// Exact value of a finite double.
inline Rational to_rational(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r);

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

}  // namespace lkq

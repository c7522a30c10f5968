#include "lkq/rational.hpp"

#include <cctype>

#include "lkq/error.hpp"

namespace lkq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input: return "Input";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::Empty: return "Empty";
    case ErrorKind::Redundant: return "Redundant";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::GroupingMismatch: return "GroupingMismatch";
    case ErrorKind::NotCuboid: return "NotCuboid";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotPositivePair: return "NotPositivePair";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::DegenerateSampleSet: return "DegenerateSampleSet";
    case ErrorKind::DegenerateRoots: return "DegenerateRoots";
    case ErrorKind::PositivityFailure: return "PositivityFailure";
    case ErrorKind::SignFailure: return "SignFailure";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::BoundaryProximity: return "BoundaryProximity";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::CharacteristicHyperplane: return "CharacteristicHyperplane";
    case ErrorKind::SingularRestriction: return "SingularRestriction";
    case ErrorKind::SelfCheckFailure: return "SelfCheckFailure";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::ConditionFailure: return "ConditionFailure";
    case ErrorKind::NonConstantScalar: return "NonConstantScalar";
    case ErrorKind::ContainmentFailure: return "ContainmentFailure";
    case ErrorKind::CoverageFailure: return "CoverageFailure";
  }
  return "Unknown";
}

namespace {

BigInt parse_digits(std::string_view digits, std::string_view original) {
  if (digits.empty()) throw Error(ErrorKind::Input, "malformed number '" + std::string(original) + "'");
  BigInt value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw Error(ErrorKind::Input, "malformed number '" + std::string(original) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

BigInt pow10(long n) {
  BigInt p = 1;
  for (long i = 0; i < n; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view s, std::string_view original) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    BigInt magnitude = parse_digits(exp_text, original);
    if (magnitude > 4000) throw Error(ErrorKind::Input, "exponent out of range in '" + std::string(original) + "'");
    exponent = magnitude.convert_to<long>();
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view frac = s.substr(dot + 1);
    std::string_view whole = s.substr(0, dot);
    if (whole.empty() && frac.empty()) throw Error(ErrorKind::Input, "malformed number '" + std::string(original) + "'");
    digits = std::string(whole) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(s);
  }
  Rational value(parse_digits(digits, original));
  if (exponent > 0) value *= Rational(pow10(exponent));
  if (exponent < 0) value /= Rational(pow10(-exponent));
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(s.substr(0, slash)), text);
    Rational den = parse_decimal(trim(s.substr(slash + 1)), text);
    if (den == 0) throw Error(ErrorKind::Input, "zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(s, text);
}

std::string to_string(const Rational& r) {
  if (is_integer(r)) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace lkq

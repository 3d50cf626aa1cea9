#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bncsm {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always kept in lowest terms with a positive denominator.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Thrown when a textual rational cannot be parsed.
class RationalSyntaxError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Parses "p/q" or an integer string. Decimal and exponent notation are
/// rejected so that no parameter ever passes through floating point.
inline Rational parse_rational(std::string_view text) {
  static const std::regex pattern(R"(^\s*([+-]?[0-9]+)(?:\s*/\s*([0-9]+))?\s*$)");
  std::cmatch match;
  if (!std::regex_match(text.data(), text.data() + text.size(), match, pattern)) {
    throw RationalSyntaxError("not an exact rational (expected p/q or integer): '" +
                              std::string(text) + "'");
  }
  Integer num(match[1].str().front() == '+' ? match[1].str().substr(1) : match[1].str());
  Integer den(1);
  if (match[2].matched) {
    den = Integer(match[2].str());
    if (den == 0) {
      throw RationalSyntaxError("zero denominator in '" + std::string(text) + "'");
    }
  }
  return Rational(num, den);
}

/// "p/q", or just "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
  const auto num = numerator(r);
  const auto den = denominator(r);
  if (den == 1) {
    return num.str();
  }
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline long double to_long_double(const Rational& r) {
  return static_cast<long double>(numerator(r).convert_to<long double>()) /
         denominator(r).convert_to<long double>();
}

inline Rational factorial(unsigned k) {
  Integer f(1);
  for (unsigned i = 2; i <= k; ++i) {
    f *= i;
  }
  return Rational(f);
}

}  // namespace bncsm

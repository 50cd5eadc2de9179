#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

#include "progressive/error.hpp"

namespace progressive {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

namespace detail {

inline bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace detail

/// Parses "p/q" or "p". Rejects zero denominators and anything non-numeric.
inline Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!detail::is_integer_literal(num_text)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  Integer num{std::string(num_text)};
  Integer den(1);
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!detail::is_integer_literal(den_text)) {
      throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    den = Integer(std::string(den_text));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

/// Canonical text form: "p/q" in lowest terms with q > 0, or "p" when q == 1.
inline std::string format_rational(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace progressive

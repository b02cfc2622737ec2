#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace ccot {

// All masses, costs and capacities are exact rationals backed by GMP.
// Values built through make_rational / parse_rational are always in
// canonical form: reduced, denominator > 0. GMP keeps arithmetic results
// canonical as long as the operands are. Expression templates are off so
// that every subexpression is itself a Rational (std::min, auto, and
// ternaries behave like they do for built-in numbers).
using Rational =
    boost::multiprecision::number<boost::multiprecision::backends::gmp_rational,
                                  boost::multiprecision::et_off>;
using BigInt =
    boost::multiprecision::number<boost::multiprecision::backends::gmp_int,
                                  boost::multiprecision::et_off>;

inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  // The (mpz, mpz) constructor canonicalizes, including the sign.
  return Rational(std::move(num), std::move(den));
}

inline Rational make_rational(long long num, long long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

// Accepts "p/q" or "p".
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    return make_rational(BigInt(text.substr(0, slash)),
                         BigInt(text.substr(slash + 1)));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
}

// "p/q", or just "p" when the denominator is 1.
inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) {
    return numerator(r).str();
  }
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace ccot

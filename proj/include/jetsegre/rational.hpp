#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "errors.hpp"

namespace jetsegre {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Accepts "p", "-p", "p/q". Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw DomainError("malformed rational '" + std::string(text) + "'");
  Rational q = make_rational(Integer(std::string(num)), Integer(std::string(den)));
  return negative ? Rational(-q) : q;
}

inline int sign(const Rational& q) { return sgn(q); }

/// Integer power of a rational, exponent >= 0.
inline Rational pow(const Rational& base, unsigned exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  return make_rational(num, den);
}

inline Integer ipow(long base, unsigned exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), Integer(base).get_mpz_t(), exponent);
  return out;
}

}  // namespace jetsegre

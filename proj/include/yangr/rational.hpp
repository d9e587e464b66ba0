#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "yangr/error.hpp"

namespace yangr {

using Rational = mpq_class;

inline bool is_zero(const Rational &x) { return sgn(x) == 0; }

/// Parses "p", "p/q" or "-p/q" (surrounding whitespace not allowed).
inline Rational parse_rational(std::string_view text) {
  if (text.empty())
    throw InputError("empty rational literal");
  std::string s(text);
  if (s.front() == '+')
    s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0)
    throw InputError("invalid rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0)
    throw InputError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// num/den in lowest terms; mpq_class(num, den) alone does not canonicalize.
inline Rational ratio(long num, long den) {
  if (den == 0)
    throw InputError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical "p/q" form; integers are written without a denominator.
inline std::string to_string(const Rational &x) { return x.get_str(10); }

inline Rational binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n)
    return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(out);
}

inline Rational power(const Rational &base, unsigned exponent) {
  Rational out(1);
  for (unsigned e = 0; e < exponent; ++e)
    out *= base;
  return out;
}

} // namespace yangr

#pragma once
// Exact arbitrary-precision rationals for series coefficients, backed by GMP.
// Values are kept canonical (coprime, positive denominator); mpq arithmetic
// preserves canonical form, so only construction from raw parts needs care.

#include <gmpxx.h>

#include <string>

namespace socksort {

using BigRational = mpq_class;
using BigInteger = mpz_class;

/// Canonical rational from numerator and denominator.
inline BigRational rational(long num, long den = 1) {
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

inline BigRational rational(BigInteger num, BigInteger den) {
  BigRational r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

inline bool is_canonical(const BigRational& r) {
  return r.get_den() > 0 && gcd(r.get_num(), r.get_den()) == 1;
}

inline bool is_integer(const BigRational& r) { return r.get_den() == 1; }

/// "3", "-1/2", ...
inline std::string to_string(const BigRational& r) {
  return r.get_str();
}

}  // namespace socksort

#pragma once
// Dense polynomials in q over exact rationals, and the field of rational
// functions in q built on them.  Rational functions are kept reduced with a
// monic denominator; scalar factors live in the numerator's coefficients.
//
// The bivariate series pipeline stays polynomial (denominator 1) except where
// (q+1) or 1/q genuinely enters; reduction keeps those denominators tiny, so
// the gcd calls stay cheap.

#include <string>
#include <utility>
#include <vector>

#include "socksort/rational.hpp"

namespace socksort {

class QPoly {
 public:
  QPoly() = default;  // zero
  QPoly(long constant) : QPoly(BigRational(constant)) {}
  QPoly(BigRational constant);
  static QPoly monomial(BigRational coeff, int degree);
  static QPoly from_coeffs(std::vector<BigRational> ascending);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  BigRational coeff(int d) const;
  const BigRational& leading() const;  // undefined on zero
  const std::vector<BigRational>& coeffs() const { return coeffs_; }

  BigRational eval(const BigRational& q) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly operator-() const;
  friend bool operator==(const QPoly& a, const QPoly& b) = default;

  /// Scales so the leading coefficient is 1.
  QPoly monic() const;

  /// "q + 2 q^2"; unit coefficients are omitted, zero renders as "0".
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigRational> coeffs_;  // ascending degree, no trailing zeros
};

/// Quotient and remainder; throws std::invalid_argument when b is zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);

/// Monic gcd by Euclid's algorithm; gcd(0, 0) = 0.
QPoly poly_gcd(QPoly a, QPoly b);

class QRational {
 public:
  QRational() : num_(), den_(1) {}  // zero
  QRational(long constant) : num_(constant), den_(1) {}
  QRational(BigRational constant) : num_(std::move(constant)), den_(1) {}
  QRational(QPoly polynomial) : num_(std::move(polynomial)), den_(1) {}
  QRational(QPoly num, QPoly den);  // reduces; throws on zero denominator

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const;

  /// Throws std::logic_error when the denominator is not 1.
  const QPoly& as_polynomial() const;

  BigRational eval(const BigRational& q) const;  // throws on vanishing denominator

  friend QRational operator+(const QRational& a, const QRational& b);
  friend QRational operator-(const QRational& a, const QRational& b);
  friend QRational operator*(const QRational& a, const QRational& b);
  friend QRational operator/(const QRational& a, const QRational& b);
  QRational operator-() const;
  QRational& operator+=(const QRational& b) { return *this = *this + b; }
  QRational& operator-=(const QRational& b) { return *this = *this - b; }
  QRational& operator*=(const QRational& b) { return *this = *this * b; }
  QRational& operator/=(const QRational& b) { return *this = *this / b; }
  friend bool operator==(const QRational& a, const QRational& b) = default;

  std::string to_string() const;

 private:
  void reduce();
  QPoly num_, den_;
};

}  // namespace socksort

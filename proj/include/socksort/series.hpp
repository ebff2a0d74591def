#pragma once
// Truncated formal power series with exact coefficients, and the two
// generating-function pipelines built on them: the closed forms (square root
// of a quartic over a quadratic denominator) and the degree-by-degree
// fixed-point solutions of the functional equations.  Univariate coefficients
// are rationals; bivariate coefficients are rational functions in q that must
// reduce to non-negative-integer polynomials on output.

#include <stdexcept>
#include <string>
#include <vector>

#include "socksort/qrational.hpp"
#include "socksort/rational.hpp"

namespace socksort {

/// Coefficients c0..cN, exact; operations never read beyond the truncation
/// order and results carry the minimum of the input orders.
template <typename Coeff>
class Series {
 public:
  explicit Series(int order) : coeffs_(static_cast<std::size_t>(order) + 1) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
  }
  static Series from_coeffs(std::vector<Coeff> ascending, int order) {
    Series s(order);
    for (std::size_t i = 0; i < ascending.size() && i <= static_cast<std::size_t>(order); ++i) {
      s.coeffs_[i] = std::move(ascending[i]);
    }
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Coeff& coeff(int n) const {
    check_index(n);
    return coeffs_[static_cast<std::size_t>(n)];
  }
  void set_coeff(int n, Coeff value) {
    check_index(n);
    coeffs_[static_cast<std::size_t>(n)] = std::move(value);
  }

  /// Smallest n with a nonzero coefficient; order()+1 when all are zero.
  int valuation() const {
    for (int n = 0; n <= order(); ++n) {
      if (!(coeffs_[static_cast<std::size_t>(n)] == Coeff(0))) return n;
    }
    return order() + 1;
  }

  /// Drops the factor x^k; requires the first k coefficients to vanish.
  Series shifted_down(int k) const;

  friend bool operator==(const Series& a, const Series& b) = default;

 private:
  void check_index(int n) const {
    if (n < 0 || n > order()) {
      throw std::out_of_range("series coefficient " + std::to_string(n) +
                              " beyond truncation order " + std::to_string(order()));
    }
  }
  std::vector<Coeff> coeffs_;
};

using UniSeries = Series<BigRational>;
using BiSeries = Series<QRational>;

template <typename Coeff>
Series<Coeff> operator+(const Series<Coeff>& a, const Series<Coeff>& b);
template <typename Coeff>
Series<Coeff> operator-(const Series<Coeff>& a, const Series<Coeff>& b);

/// Truncated convolution; skips zero coefficients of the sparser factor.
template <typename Coeff>
Series<Coeff> operator*(const Series<Coeff>& a, const Series<Coeff>& b);

/// Multiplicative inverse; throws std::invalid_argument on zero constant term.
template <typename Coeff>
Series<Coeff> series_inverse(const Series<Coeff>& f);

/// Square root by the coefficient recurrence of g*g = f; requires constant
/// term 1 (throws std::invalid_argument otherwise).
template <typename Coeff>
Series<Coeff> series_sqrt(const Series<Coeff>& f);

/// Exact quotient after cancelling the denominator's valuation.  Throws
/// std::invalid_argument when valuation(den) > valuation(num) and
/// std::logic_error when the re-multiplied quotient fails to reproduce the
/// numerator (an algebra bug, never a data condition).
template <typename Coeff>
Series<Coeff> divide_at_valuation(const Series<Coeff>& num, const Series<Coeff>& den);

// --- Generating functions ---

/// Coefficients 0, s(1), ..., s(N) of the sortable-pattern counting series,
/// from the closed form ((-1+3x-3x^2) + sqrt(1-6x+7x^2-2x^3+x^4))/(4(x^2-x)).
/// Every coefficient is checked to be a non-negative integer.
UniSeries p_closed_form(int N);

/// The same series solved degree by degree from its functional equation
///   P = x/(1-x) + 1/(2(1-x)) * (2 P x/(1-x))/(1 - 2 P x/(1-x));
/// coefficient n of the right side depends only on coefficients < n, which is
/// re-checked by substituting the solution back in.
UniSeries p_functional_eq(int N);

/// Bivariate refinement: coefficient of x^n is the polynomial sum over r of
/// s(n,r) q^r.  Closed form with the q-quartic radicand; coefficients must
/// reduce to polynomials in q with non-negative integer coefficients.
BiSeries pq_closed_form(int N);

/// Degree-by-degree solution of the bivariate functional equation, where the
/// block coupling contributes a factor (1 + 1/q) per join.
BiSeries pq_functional_eq(int N);

/// Sets q = 1, collapsing the refinement back to the univariate series.
UniSeries eval_q1(const BiSeries& f);

}  // namespace socksort

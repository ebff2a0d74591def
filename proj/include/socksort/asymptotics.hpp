#pragma once
// Numerics for the growth of the sortable-pattern counts: the smallest
// positive root x0 of 1 - 6x + 7x^2 - 2x^3 + x^4, the growth rate c = 1/x0,
// and the leading constant K in s(n) ~ K c^n n^(-3/2).  These are the only
// places floating point appears; everything uses GMP floats at a configurable
// decimal precision.

#include <gmpxx.h>

#include <string>

namespace socksort {

mpf_class quartic_at(const mpf_class& x);

/// Root by bisection on [0, 1/2]; the quartic has exactly one root there.
mpf_class quartic_root_bisection(int digits);

/// (1 - sqrt(8*sqrt(2) - 11)) / 2.
mpf_class quartic_root_closed_form(int digits);

/// Bisection result, cross-checked against the closed form to the requested
/// precision (throws std::logic_error on disagreement).  digits >= 10.
mpf_class quartic_smallest_root(int digits);

std::string to_decimal_string(const mpf_class& value, int digits);

struct AsymptoticEstimate {
  std::string x0_decimal;   // root to the working precision
  double x0 = 0;
  double c = 0;             // 1/x0
  double k_estimate = 0;
  int n_used = 0;
  double beta = 0.5;        // exponent of the (1-x) singularity factor

  /// {"x0": ..., "c": ..., "N": ..., "K_estimate": ..., "K_paper": 0.34313},
  /// reals at 6 significant digits.
  std::string to_json() const;
};

/// Forms K_n = s(n) x0^n n^(3/2) from the exact coefficients and returns the
/// two-point extrapolation 2 K_{2m} - K_m with m = N/2, which cancels the
/// O(1/n) error term.  N >= 100.
AsymptoticEstimate estimate_K(int N, int digits = 40);

/// Single sample K_n (exposed for convergence checks).
double k_sample(int n, int digits = 40);

}  // namespace socksort

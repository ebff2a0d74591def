#include "socksort/asymptotics.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

#include "socksort/series.hpp"

namespace socksort {

namespace {

mp_bitcnt_t bits_for_digits(int digits) {
  // ~3.33 bits per decimal digit plus slack for the iteration count.
  return static_cast<mp_bitcnt_t>((digits + 15) * 10 / 3);
}

void require_digits(int digits) {
  if (digits < 10) throw std::invalid_argument("precision must be >= 10 digits");
}

mpf_class pow_ui(const mpf_class& base, unsigned long e) {
  mpf_class out(0, base.get_prec());
  mpf_pow_ui(out.get_mpf_t(), base.get_mpf_t(), e);
  return out;
}

double six_significant(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::atof(buf);
}

}  // namespace

mpf_class quartic_at(const mpf_class& x) {
  // 1 - 6x + 7x^2 - 2x^3 + x^4, Horner form.
  mpf_class acc(x, x.get_prec());
  acc -= 2;
  acc = acc * x + 7;
  acc = acc * x - 6;
  acc = acc * x + 1;
  return acc;
}

mpf_class quartic_root_bisection(int digits) {
  require_digits(digits);
  const mp_bitcnt_t prec = bits_for_digits(digits);
  mpf_class lo(0, prec), hi(0, prec), mid(0, prec), eps(1, prec);
  hi = 0.5;
  for (int i = 0; i < digits + 2; ++i) eps /= 10;
  // The quartic is (x - x^2)^2 - 6(x - x^2) + 1; on [0, 1/2] it crosses zero
  // exactly once, from positive to negative.
  while (hi - lo > eps) {
    mid = (lo + hi) / 2;
    if (quartic_at(mid) > 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

mpf_class quartic_root_closed_form(int digits) {
  require_digits(digits);
  const mp_bitcnt_t prec = bits_for_digits(digits);
  mpf_class two(2, prec);
  mpf_class inner = 8 * sqrt(two) - 11;
  return (1 - sqrt(inner)) / 2;
}

mpf_class quartic_smallest_root(int digits) {
  mpf_class root = quartic_root_bisection(digits);
  mpf_class reference = quartic_root_closed_form(digits);
  mpf_class tol(1, root.get_prec());
  for (int i = 0; i < digits; ++i) tol /= 10;
  if (abs(root - reference) > tol) {
    throw std::logic_error("bisection and closed-form roots disagree");
  }
  return root;
}

std::string to_decimal_string(const mpf_class& value, int digits) {
  mp_exp_t exp = 0;
  std::string mant = value.get_str(exp, 10, static_cast<std::size_t>(digits));
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(mant.begin());
  }
  if (mant.empty()) return "0";
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  } else if (static_cast<std::size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<std::size_t>(exp)) + "." +
          mant.substr(static_cast<std::size_t>(exp));
  }
  return sign + out;
}

std::string AsymptoticEstimate::to_json() const {
  nlohmann::ordered_json j;
  j["x0"] = six_significant(x0);
  j["c"] = six_significant(c);
  j["N"] = n_used;
  j["K_estimate"] = six_significant(k_estimate);
  j["K_paper"] = 0.34313;
  return j.dump();
}

namespace {

// s(n) * x0^n * n^(3/2) at the root's precision.
mpf_class k_term(const UniSeries& p, const mpf_class& x0, int n) {
  const mp_bitcnt_t prec = x0.get_prec();
  const BigRational& s = p.coeff(n);
  mpf_class term(s, prec);
  term *= pow_ui(x0, static_cast<unsigned long>(n));
  mpf_class nn(n, prec);
  term *= sqrt(nn * nn * nn);
  return term;
}

}  // namespace

AsymptoticEstimate estimate_K(int N, int digits) {
  if (N < 100) throw std::invalid_argument("need N >= 100");
  require_digits(digits);
  const UniSeries p = p_closed_form(N);
  const mpf_class x0 = quartic_smallest_root(digits);

  const int m = N / 2;
  const mpf_class k_m = k_term(p, x0, m);
  const mpf_class k_2m = k_term(p, x0, 2 * m);
  const mpf_class k = 2 * k_2m - k_m;

  AsymptoticEstimate est;
  est.x0_decimal = to_decimal_string(x0, digits);
  est.x0 = x0.get_d();
  est.c = mpf_class(1 / x0).get_d();
  est.k_estimate = k.get_d();
  est.n_used = N;
  return est;
}

double k_sample(int n, int digits) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  const UniSeries p = p_closed_form(n);
  const mpf_class x0 = quartic_smallest_root(digits);
  return k_term(p, x0, n).get_d();
}

}  // namespace socksort

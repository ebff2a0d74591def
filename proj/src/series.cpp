#include "socksort/series.hpp"

#include <algorithm>
#include <sstream>

namespace socksort {

// --- QPoly ---

QPoly::QPoly(BigRational constant) {
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

QPoly QPoly::monomial(BigRational coeff, int degree) {
  QPoly p;
  if (coeff != 0) {
    p.coeffs_.assign(static_cast<std::size_t>(degree) + 1, BigRational(0));
    p.coeffs_.back() = std::move(coeff);
  }
  return p;
}

QPoly QPoly::from_coeffs(std::vector<BigRational> ascending) {
  QPoly p;
  p.coeffs_ = std::move(ascending);
  p.trim();
  return p;
}

void QPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigRational QPoly::coeff(int d) const {
  if (d < 0 || d > degree()) return BigRational(0);
  return coeffs_[static_cast<std::size_t>(d)];
}

const BigRational& QPoly::leading() const { return coeffs_.back(); }

BigRational QPoly::eval(const BigRational& q) const {
  BigRational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * q + *it;
  }
  return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<BigRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] += b.coeffs_[i];
  }
  return QPoly::from_coeffs(std::move(out));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<BigRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.coeffs_.size()) out[i] += a.coeffs_[i];
    if (i < b.coeffs_.size()) out[i] -= b.coeffs_[i];
  }
  return QPoly::from_coeffs(std::move(out));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return QPoly();
  std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return QPoly::from_coeffs(std::move(out));
}

QPoly QPoly::operator-() const {
  QPoly p;
  p.coeffs_.reserve(coeffs_.size());
  for (const BigRational& c : coeffs_) p.coeffs_.push_back(-c);
  return p;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  QPoly p;
  p.coeffs_.reserve(coeffs_.size());
  for (const BigRational& c : coeffs_) p.coeffs_.push_back(c / leading());
  return p;
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = 0; d <= degree(); ++d) {
    const BigRational c = coeff(d);
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += socksort::to_string(c);
    } else {
      if (c != 1) out += socksort::to_string(c) + " ";
      out += d == 1 ? "q" : "q^" + std::to_string(d);
    }
  }
  return out;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  QPoly remainder = a;
  std::vector<BigRational> quot;
  const int db = b.degree();
  if (remainder.degree() >= db) {
    quot.assign(static_cast<std::size_t>(remainder.degree() - db) + 1, BigRational(0));
  }
  while (!remainder.is_zero() && remainder.degree() >= db) {
    const int shift = remainder.degree() - db;
    BigRational factor = remainder.leading() / b.leading();
    quot[static_cast<std::size_t>(shift)] = factor;
    remainder = remainder - QPoly::monomial(std::move(factor), shift) * b;
  }
  return {QPoly::from_coeffs(std::move(quot)), std::move(remainder)};
}

QPoly poly_gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = divmod(a, b).second.monic();  // monic keeps coefficients small
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// --- QRational ---

QRational::QRational(QPoly num, QPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("zero denominator");
  reduce();
}

void QRational::reduce() {
  if (num_.is_zero()) {
    den_ = QPoly(1);
    return;
  }
  if (den_.degree() > 0) {
    QPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = divmod(num_, g).first;
      den_ = divmod(den_, g).first;
    }
  }
  if (!(den_.leading() == 1)) {
    const BigRational lead = den_.leading();
    num_ = num_ * QPoly(BigRational(1) / lead);
    den_ = den_.monic();
  }
}

bool QRational::is_polynomial() const { return den_ == QPoly(1); }

const QPoly& QRational::as_polynomial() const {
  if (!is_polynomial()) {
    throw std::logic_error("rational function " + to_string() +
                           " is not a polynomial");
  }
  return num_;
}

BigRational QRational::eval(const BigRational& q) const {
  const BigRational d = den_.eval(q);
  if (d == 0) throw std::invalid_argument("denominator vanishes at q = " +
                                          socksort::to_string(q));
  return num_.eval(q) / d;
}

QRational operator+(const QRational& a, const QRational& b) {
  if (a.is_polynomial() && b.is_polynomial()) return QRational(a.num_ + b.num_);
  return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator-(const QRational& a, const QRational& b) {
  if (a.is_polynomial() && b.is_polynomial()) return QRational(a.num_ - b.num_);
  return QRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator*(const QRational& a, const QRational& b) {
  if (a.is_polynomial() && b.is_polynomial()) return QRational(a.num_ * b.num_);
  return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

QRational operator/(const QRational& a, const QRational& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  return QRational(a.num_ * b.den_, a.den_ * b.num_);
}

QRational QRational::operator-() const {
  QRational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

std::string QRational::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

// --- Series ---

template <typename Coeff>
Series<Coeff> Series<Coeff>::shifted_down(int k) const {
  if (k < 0 || k > order()) throw std::invalid_argument("bad shift");
  for (int n = 0; n < k; ++n) {
    if (!(coeff(n) == Coeff(0))) {
      throw std::invalid_argument("cannot shift past a nonzero coefficient");
    }
  }
  Series out(order() - k);
  for (int n = 0; n <= out.order(); ++n) out.set_coeff(n, coeff(n + k));
  return out;
}

template <typename Coeff>
Series<Coeff> operator+(const Series<Coeff>& a, const Series<Coeff>& b) {
  Series<Coeff> out(std::min(a.order(), b.order()));
  for (int n = 0; n <= out.order(); ++n) out.set_coeff(n, a.coeff(n) + b.coeff(n));
  return out;
}

template <typename Coeff>
Series<Coeff> operator-(const Series<Coeff>& a, const Series<Coeff>& b) {
  Series<Coeff> out(std::min(a.order(), b.order()));
  for (int n = 0; n <= out.order(); ++n) out.set_coeff(n, a.coeff(n) - b.coeff(n));
  return out;
}

namespace {

template <typename Coeff>
std::vector<int> nonzero_indices(const Series<Coeff>& f, int limit) {
  std::vector<int> idx;
  for (int n = 0; n <= std::min(limit, f.order()); ++n) {
    if (!(f.coeff(n) == Coeff(0))) idx.push_back(n);
  }
  return idx;
}

}  // namespace

template <typename Coeff>
Series<Coeff> operator*(const Series<Coeff>& a, const Series<Coeff>& b) {
  const int N = std::min(a.order(), b.order());
  const auto nza = nonzero_indices(a, N);
  const auto nzb = nonzero_indices(b, N);
  const Series<Coeff>& outer = nza.size() <= nzb.size() ? a : b;
  const Series<Coeff>& inner = nza.size() <= nzb.size() ? b : a;
  const auto& nz = nza.size() <= nzb.size() ? nza : nzb;
  Series<Coeff> out(N);
  for (int i : nz) {
    const Coeff& ci = outer.coeff(i);
    for (int j = 0; i + j <= N; ++j) {
      const Coeff& cj = inner.coeff(j);
      if (cj == Coeff(0)) continue;
      out.set_coeff(i + j, out.coeff(i + j) + ci * cj);
    }
  }
  return out;
}

template <typename Coeff>
Series<Coeff> series_inverse(const Series<Coeff>& f) {
  if (f.coeff(0) == Coeff(0)) {
    throw std::invalid_argument("series inverse needs a nonzero constant term");
  }
  const int N = f.order();
  const auto nz = nonzero_indices(f, N);
  Series<Coeff> inv(N);
  const Coeff c0_inv = Coeff(1) / f.coeff(0);
  inv.set_coeff(0, c0_inv);
  for (int n = 1; n <= N; ++n) {
    Coeff acc = Coeff(0);
    for (int k : nz) {
      if (k < 1) continue;
      if (k > n) break;
      acc = acc + f.coeff(k) * inv.coeff(n - k);
    }
    inv.set_coeff(n, -(c0_inv * acc));
  }
  return inv;
}

template <typename Coeff>
Series<Coeff> series_sqrt(const Series<Coeff>& f) {
  if (!(f.coeff(0) == Coeff(1))) {
    throw std::invalid_argument("series sqrt needs constant term 1");
  }
  const int N = f.order();
  Series<Coeff> g(N);
  g.set_coeff(0, Coeff(1));
  const Coeff two = Coeff(2);
  for (int n = 1; n <= N; ++n) {
    // g_n = (f_n - sum_{i=1}^{n-1} g_i g_{n-i}) / (2 g_0), halved by symmetry.
    Coeff acc = Coeff(0);
    for (int i = 1; 2 * i < n; ++i) acc = acc + g.coeff(i) * g.coeff(n - i);
    acc = acc + acc;
    if (n % 2 == 0) acc = acc + g.coeff(n / 2) * g.coeff(n / 2);
    g.set_coeff(n, (f.coeff(n) - acc) / two);
  }
  return g;
}

template <typename Coeff>
Series<Coeff> divide_at_valuation(const Series<Coeff>& num, const Series<Coeff>& den) {
  const int val = den.valuation();
  if (val > den.order()) throw std::invalid_argument("division by the zero series");
  if (num.valuation() < val) {
    throw std::invalid_argument(
        "valuation mismatch: numerator valuation " +
        std::to_string(num.valuation()) + " below denominator valuation " +
        std::to_string(val));
  }
  const Series<Coeff> n0 = num.shifted_down(val);
  const Series<Coeff> d0 = den.shifted_down(val);
  Series<Coeff> q = n0 * series_inverse(d0);
  // Re-multiplying must reproduce the numerator exactly; a residue here means
  // the algebra above is broken, not that the inputs are bad.
  const Series<Coeff> back = q * d0;
  for (int n = 0; n <= q.order(); ++n) {
    if (!(back.coeff(n) == n0.coeff(n))) {
      throw std::logic_error("division left a nonzero remainder at order " +
                             std::to_string(n));
    }
  }
  return q;
}

template class Series<BigRational>;
template class Series<QRational>;
template Series<BigRational> operator+(const Series<BigRational>&, const Series<BigRational>&);
template Series<QRational> operator+(const Series<QRational>&, const Series<QRational>&);
template Series<BigRational> operator-(const Series<BigRational>&, const Series<BigRational>&);
template Series<QRational> operator-(const Series<QRational>&, const Series<QRational>&);
template Series<BigRational> operator*(const Series<BigRational>&, const Series<BigRational>&);
template Series<QRational> operator*(const Series<QRational>&, const Series<QRational>&);
template Series<BigRational> series_inverse(const Series<BigRational>&);
template Series<QRational> series_inverse(const Series<QRational>&);
template Series<BigRational> series_sqrt(const Series<BigRational>&);
template Series<QRational> series_sqrt(const Series<QRational>&);
template Series<BigRational> divide_at_valuation(const Series<BigRational>&, const Series<BigRational>&);
template Series<QRational> divide_at_valuation(const Series<QRational>&, const Series<QRational>&);

// --- Generating functions ---

namespace {

UniSeries uni_poly(std::vector<long> coeffs, int order) {
  std::vector<BigRational> c;
  c.reserve(coeffs.size());
  for (long v : coeffs) c.emplace_back(v);
  return UniSeries::from_coeffs(std::move(c), order);
}

void check_counting_coeffs(const UniSeries& p) {
  if (!(p.coeff(0) == 0)) throw std::logic_error("constant term should vanish");
  for (int n = 1; n <= p.order(); ++n) {
    const BigRational& c = p.coeff(n);
    if (!is_integer(c) || c < 0) {
      throw std::logic_error("coefficient of x^" + std::to_string(n) +
                             " is not a non-negative integer: " + to_string(c));
    }
  }
}

void check_counting_coeffs(const BiSeries& p) {
  if (!p.coeff(0).is_zero()) throw std::logic_error("constant term should vanish");
  for (int n = 1; n <= p.order(); ++n) {
    const QPoly& poly = p.coeff(n).as_polynomial();  // throws when not reduced to a polynomial
    for (const BigRational& c : poly.coeffs()) {
      if (!is_integer(c) || c < 0) {
        throw std::logic_error("coefficient of x^" + std::to_string(n) +
                               " has a bad q-coefficient: " + to_string(c));
      }
    }
  }
}

}  // namespace

UniSeries p_closed_form(int N) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  const int M = N + 1;  // the denominator has valuation 1
  const UniSeries radicand = uni_poly({1, -6, 7, -2, 1}, M);
  const UniSeries root = series_sqrt(radicand);
  const UniSeries numerator = uni_poly({-1, 3, -3}, M) + root;
  const UniSeries denominator = uni_poly({0, -4, 4}, M);
  UniSeries p = divide_at_valuation(numerator, denominator);
  check_counting_coeffs(p);
  return p;
}

namespace {

// Degree-by-degree fixed point of P = A + B * G with G = v + v*G, v = w*u*P.
// The scalar w and the coefficient streams of u, A and B are what differ
// between the univariate and bivariate equations.  v has valuation >= 2
// because u and P both vanish at order 0, so coefficient n of the right-hand
// side only needs P below n.
template <typename Coeff, typename UAt, typename AAt, typename BAt>
Series<Coeff> solve_block_equation(int N, const Coeff& w, UAt u_at, AAt a_at,
                                   BAt b_at) {
  Series<Coeff> p(N), v(N), g(N);
  for (int n = 1; n <= N; ++n) {
    Coeff vn = Coeff(0);
    for (int k = 1; k < n; ++k) vn += u_at(n - k) * p.coeff(k);
    v.set_coeff(n, w * vn);
    Coeff gn = v.coeff(n);
    for (int k = 2; k + 2 <= n; ++k) gn += v.coeff(k) * g.coeff(n - k);
    g.set_coeff(n, gn);
    Coeff pn = a_at(n);
    for (int j = 2; j <= n; ++j) pn += b_at(n - j) * g.coeff(j);
    p.set_coeff(n, pn);
  }

  // Substitute the solution back into the equation, with the geometric series
  // summed as G = v / (1 - v); any mismatch means the transcription above is
  // self-inconsistent.
  Series<Coeff> u_full(N), a_full(N), b_full(N), one_minus_v(N);
  for (int n = 0; n <= N; ++n) {
    u_full.set_coeff(n, u_at(n));
    a_full.set_coeff(n, a_at(n));
    b_full.set_coeff(n, b_at(n));
  }
  Series<Coeff> v_full = u_full * p;
  for (int n = 0; n <= N; ++n) v_full.set_coeff(n, w * v_full.coeff(n));
  for (int n = 0; n <= N; ++n) {
    one_minus_v.set_coeff(n, (n == 0 ? Coeff(1) : Coeff(0)) - v_full.coeff(n));
  }
  const Series<Coeff> g_full = v_full * series_inverse(one_minus_v);
  const Series<Coeff> rhs = a_full + b_full * g_full;
  if (!(rhs == p)) {
    throw std::logic_error("fixed-point solution does not satisfy the equation");
  }
  return p;
}

}  // namespace

UniSeries p_functional_eq(int N) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  // u = A = x/(1-x); B = 1/(2(1-x)); each block join doubles the choices.
  const BigRational half(1, 2);
  auto u_at = [](int n) { return BigRational(n >= 1 ? 1 : 0); };
  auto b_at = [half](int) { return half; };
  UniSeries p = solve_block_equation(N, BigRational(2), u_at, u_at, b_at);
  check_counting_coeffs(p);
  return p;
}

BiSeries pq_closed_form(int N) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  const int M = N + 1;
  const QPoly q = QPoly::monomial(1, 1);
  const QPoly q2 = QPoly::monomial(1, 2);
  auto bi_poly = [M](std::vector<QPoly> coeffs) {
    std::vector<QRational> c(coeffs.begin(), coeffs.end());
    return BiSeries::from_coeffs(std::move(c), M);
  };
  // 1 - 2(q+2)x + (q^2+2q+4)x^2 - 2q^2 x^3 + q^2 x^4
  const BiSeries radicand = bi_poly({QPoly(1),
                                     -(q + QPoly(2)) * QPoly(2),
                                     q2 + q * QPoly(2) + QPoly(4),
                                     -(q2 * QPoly(2)),
                                     q2});
  const BiSeries root = series_sqrt(radicand);
  // (-q + (q^2+2q)x - (q^2+2q)x^2) + q*sqrt(...)
  BiSeries numerator = bi_poly({-q, q2 + q * QPoly(2), -(q2 + q * QPoly(2))});
  const QRational qfactor{q};
  for (int n = 0; n <= M; ++n) {
    numerator.set_coeff(n, numerator.coeff(n) + qfactor * root.coeff(n));
  }
  // 2(q+1)(x^2 - x)
  const QPoly den1 = (q + QPoly(1)) * QPoly(2);
  const BiSeries denominator = bi_poly({QPoly(), -den1, den1});
  BiSeries p = divide_at_valuation(numerator, denominator);
  check_counting_coeffs(p);
  return p;
}

BiSeries pq_functional_eq(int N) {
  if (N < 1) throw std::invalid_argument("need N >= 1");
  // u = x/(1-x); A = qx/(1-x); joins contribute (1+1/q) each, so
  // w = (q+1)/q and B = q/((1+1/q)(1-x)) = q^2/((q+1)(1-x)).
  const QPoly q = QPoly::monomial(1, 1);
  const QRational w(q + QPoly(1), q);
  const QRational qq{q};
  const QRational b0(q * q, q + QPoly(1));
  auto u_at = [](int n) { return QRational(n >= 1 ? 1 : 0); };
  auto a_at = [qq](int n) { return n >= 1 ? qq : QRational(0); };
  auto b_at = [b0](int) { return b0; };
  BiSeries p = solve_block_equation(N, w, u_at, a_at, b_at);
  check_counting_coeffs(p);
  return p;
}

UniSeries eval_q1(const BiSeries& f) {
  UniSeries out(f.order());
  for (int n = 0; n <= f.order(); ++n) {
    out.set_coeff(n, f.coeff(n).eval(BigRational(1)));
  }
  return out;
}

}  // namespace socksort

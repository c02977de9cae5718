#include "turn.hpp"

#include <cmath>
#include <numeric>

namespace cdual {

namespace {

using i128 = __int128;

std::int64_t checked_i64(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) fail(std::string(what) + ": 64-bit overflow");
  return std::int64_t(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { i128 t = a % b; a = b; b = t; }
  return a;
}

}  // namespace

Frac::Frac(std::int64_t n, std::int64_t d) {
  if (d == 0) fail("fraction with zero denominator");
  i128 nn = n, dd = d;
  if (dd < 0) { nn = -nn; dd = -dd; }
  i128 g = gcd128(nn, dd);
  if (g == 0) g = 1;
  num = checked_i64(nn / g, "frac");
  den = checked_i64(dd / g, "frac");
}

static Frac make_reduced(i128 n, i128 d) {
  if (d < 0) { n = -n; d = -d; }
  i128 g = gcd128(n, d);
  if (g == 0) g = 1;
  Frac f;
  f.num = checked_i64(n / g, "frac");
  f.den = checked_i64(d / g, "frac");
  return f;
}

Frac Frac::operator+(const Frac& o) const {
  return make_reduced(i128(num) * o.den + i128(o.num) * den, i128(den) * o.den);
}
Frac Frac::operator-(const Frac& o) const {
  return make_reduced(i128(num) * o.den - i128(o.num) * den, i128(den) * o.den);
}
Frac Frac::operator*(const Frac& o) const {
  return make_reduced(i128(num) * o.num, i128(den) * o.den);
}
Frac Frac::operator/(const Frac& o) const {
  if (o.num == 0) fail("fraction division by zero");
  return make_reduced(i128(num) * o.den, i128(den) * o.num);
}
bool Frac::operator<(const Frac& o) const {
  return i128(num) * o.den < i128(o.num) * den;
}

std::string Frac::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Frac Frac::parse(const std::string& text) {
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Frac(std::stoll(text));
    return Frac(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::logic_error&) {
    fail("bad rational: '" + text + "'");
  }
}

// ---- Turn ----

Turn Turn::rational(std::int64_t p, std::int64_t q) {
  return from_frac(Frac(p, q));
}

Turn Turn::from_frac(const Frac& f) {
  Turn t;
  t.exact_ = true;
  std::int64_t m = f.num % f.den;
  if (m < 0) m += f.den;
  Frac r(m, f.den);
  t.num_ = r.num;
  t.den_ = r.den;
  return t;
}

Turn Turn::real(double v) {
  Turn t;
  t.exact_ = false;
  double m = v - std::floor(v);
  if (m >= 1.0) m = 0.0;
  t.val_ = m;
  return t;
}

std::complex<double> Turn::unit() const {
  double v = value();
  return {std::cos(2.0 * M_PI * v), std::sin(2.0 * M_PI * v)};
}

Turn Turn::mul(const Turn& o) const {
  if (exact_ && o.exact_)
    return from_frac(Frac{num_, den_} + Frac{o.num_, o.den_});
  return real(value() + o.value());
}

Turn Turn::div(const Turn& o) const { return mul(o.conj()); }

Turn Turn::conj() const {
  if (exact_) return from_frac(-Frac{num_, den_});
  return real(-val_);
}

Turn Turn::pow(std::int64_t k) const {
  if (exact_) {
    i128 n = i128(num_) * k;
    i128 m = n % den_;
    if (m < 0) m += den_;
    return from_frac(make_reduced(m, den_));
  }
  return real(val_ * double(k));
}

Turn Turn::sqrt_principal() const {
  // both roots are value/2 and value/2 + 1/2; Arg in [0, pi) picks value/2
  if (exact_) return from_frac(make_reduced(num_, i128(den_) * 2));
  return real(val_ / 2.0);
}

Turn Turn::nth_root_principal(int n) const {
  if (n < 1) fail("nth_root: n must be >= 1");
  if (exact_) {
    for (int j = 0; j < n; ++j) {
      Frac cand = make_reduced(i128(num_) + i128(j) * den_, i128(den_) * n);
      // symmetric representative in (-1/2, 1/2]
      Frac sym = (Frac(1, 2) < cand) ? cand - Frac(1) : cand;
      Frac half(1, 2 * std::int64_t(n));
      if (-half < sym && !(half < sym)) return from_frac(cand);
    }
    fail("nth_root: no candidate in principal window");
  }
  double base = val_ / n;
  for (int j = 0; j < n; ++j) {
    double c = base + double(j) / n;
    c -= std::floor(c);
    double sym = c > 0.5 ? c - 1.0 : c;
    if (sym > -0.5 / n - 1e-15 && sym <= 0.5 / n + 1e-15) return real(c);
  }
  fail("nth_root: no candidate in principal window");
}

bool Turn::is_one() const {
  if (exact_) return num_ == 0;
  return circle_dist(val_, 0.0) <= 1e-12;
}

bool Turn::is_nth_root(std::int64_t n) const {
  if (!exact_) fail("is_nth_root: decidable for exact turns only");
  return n % den_ == 0;
}

std::string Turn::str() const {
  if (exact_) return Frac{num_, den_}.str();
  return std::to_string(val_);
}

bool same_turn(const Turn& a, const Turn& b, double tol) {
  if (a.exact_ && b.exact_) return a.num_ == b.num_ && a.den_ == b.den_;
  return circle_dist(a.value(), b.value()) <= tol;
}

double circle_dist(double a, double b) {
  double d = std::fabs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

Frac rational_reconstruct(double x, std::int64_t max_den, double tol) {
  // continued-fraction convergents of x mod 1
  double v = x - std::floor(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = v;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(r);
    if (fl > 4e18) break;
    std::int64_t a = std::int64_t(fl);
    i128 p2 = i128(a) * p1 + p0;
    i128 q2 = i128(a) * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1; q0 = q1;
    p1 = checked_i64(p2, "reconstruct");
    q1 = checked_i64(q2, "reconstruct");
    double rem = r - double(a);
    if (rem < 1e-15) break;
    r = 1.0 / rem;
  }
  if (q1 == 0) fail("rational_reconstruct: no convergent");
  Frac f(p1, q1);
  if (circle_dist(v, f.to_double()) > tol)
    fail("rational_reconstruct: residual above tolerance");
  return f;
}

}  // namespace cdual

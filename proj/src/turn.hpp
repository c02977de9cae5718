// Exact circle arithmetic: points on the unit circle stored as rational (or
// real fallback) fractions of a full rotation.

#ifndef CDUAL_TURN_HPP_
#define CDUAL_TURN_HPP_

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cdual {

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error(msg);
}

// Signed rational with int64 storage, always reduced, den > 0.
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Frac() = default;
  Frac(std::int64_t n) : num(n), den(1) {}
  Frac(std::int64_t n, std::int64_t d);

  double to_double() const { return double(num) / double(den); }
  bool is_integer() const { return den == 1; }

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  Frac operator-() const { Frac f; f.num = -num; f.den = den; return f; }
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Frac& o) const { return !(*this == o); }
  bool operator<(const Frac& o) const;

  std::string str() const;
  static Frac parse(const std::string& text);  // "p/q" or "p"
};

// A point exp(2*pi*i*value) with value in [0,1), either an exact reduced
// rational or a real fallback. Products of exact turns stay exact; anything
// touching an inexact turn becomes inexact.
class Turn {
 public:
  Turn() = default;                       // exact 1 (angle 0)
  static Turn rational(std::int64_t p, std::int64_t q);
  static Turn from_frac(const Frac& f);   // reduced mod 1
  static Turn real(double v);             // inexact, v any real (reduced mod 1)

  bool exact() const { return exact_; }
  // angle as fraction of a full rotation, in [0,1)
  double value() const { return exact_ ? Frac{num_, den_}.to_double() : val_; }
  Frac frac() const {
    if (!exact_) fail("turn: exact value required");
    return Frac{num_, den_};
  }
  std::complex<double> unit() const;      // exp(2*pi*i*value)

  Turn mul(const Turn& o) const;          // multiply circle points
  Turn div(const Turn& o) const;
  Turn conj() const;
  Turn pow(std::int64_t k) const;
  Turn sqrt_principal() const;            // branch with Arg in [0, pi)
  Turn nth_root_principal(int n) const;   // offset lift in (-1/(2n), 1/(2n)]
  bool is_one() const;
  bool is_nth_root(std::int64_t n) const; // exact only: den | n

  std::string str() const;

  friend bool same_turn(const Turn& a, const Turn& b, double tol);

 private:
  bool exact_ = true;
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  double val_ = 0.0;
};

// Equality on the circle: exact pairs compare exactly, otherwise circular
// distance against tol.
bool same_turn(const Turn& a, const Turn& b, double tol = 1e-12);

// Circular distance of two angles given as fractions of a turn.
double circle_dist(double a, double b);

// Best rational p/q with q <= max_den approximating x (continued fractions).
Frac rational_reconstruct(double x, std::int64_t max_den, double tol);

}  // namespace cdual

#endif

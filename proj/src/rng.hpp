// Deterministic PRNG (splitmix64) so fixed seeds give identical streams
// everywhere; std distributions are implementation-defined and avoided.

#ifndef CDUAL_RNG_HPP_
#define CDUAL_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace cdual {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n)
  std::int64_t next_int(std::int64_t n) {
    return std::int64_t(next_u64() % std::uint64_t(n));
  }

  // standard normal via Box-Muller (explicit, no std distribution)
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_unit(), u2 = next_unit();
    while (u1 <= 1e-300) u1 = next_unit();
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_ = r * std::sin(2.0 * M_PI * u2);
    have_cached_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace cdual

#endif

#pragma once
// Self-contained random variate generation. Hand-rolled (xoshiro256++ core,
// polar-method normals, Marsaglia-Tsang gamma) so that sequences are
// bit-identical across compilers and standard libraries; std::distributions
// make no such guarantee. Streams are derived from a master seed plus a list
// of integer tags (point index, trial index, purpose), which makes every
// Monte Carlo draw a pure function of (seed, tags) and lets worker threads
// pick up arbitrary trial subsets without changing results.

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace ambc {

namespace detail {

inline std::uint64_t splitmix_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class RandomStream {
 public:
  RandomStream() : RandomStream(0) {}

  explicit RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix_step(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  // Substream addressing: absorb each tag through the splitmix finalizer so
  // nearby (seed, tag) combinations land far apart in state space.
  static RandomStream derive(std::uint64_t master,
                             std::initializer_list<std::uint64_t> tags) {
    std::uint64_t acc = master;
    for (std::uint64_t tag : tags) {
      acc ^= tag + 0x9E3779B97F4A7C15ULL + (acc << 6) + (acc >> 2);
      std::uint64_t sm = acc;
      acc = detail::splitmix_step(sm);
    }
    return RandomStream(acc);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result =
        detail::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double next_double_pos() {
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Marsaglia polar method: two independent N(0,1) values, no trig calls.
  void next_normal_pair(double& a, double& b) {
    double v1, v2, s;
    do {
      v1 = 2.0 * next_double() - 1.0;
      v2 = 2.0 * next_double() - 1.0;
      s = v1 * v1 + v2 * v2;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    a = v1 * f;
    b = v2 * f;
  }

  double next_normal() {
    double a, b;
    next_normal_pair(a, b);
    return a;
  }

  // Circularly symmetric complex Gaussian, E|z|^2 = variance.
  std::complex<double> next_cnormal(double variance) {
    double a, b;
    next_normal_pair(a, b);
    const double scale = std::sqrt(0.5 * variance);
    return {a * scale, b * scale};
  }

  // Marsaglia-Tsang for shape >= 1 (all callers use integer shape >= 1).
  double next_gamma(double shape, double scale) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = next_normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_double_pos();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v * scale;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
        return d * v * scale;
      }
    }
  }

  // Fair coin mapped to {+1.0, -1.0}; used for message bits.
  double next_pm1() { return (next_u64() >> 63) ? -1.0 : 1.0; }

 private:
  std::uint64_t state_[4];
};

}  // namespace ambc

#pragma once

// Deterministic seeded randomness. All Monte Carlo in this library draws
// from xoshiro256++ streams keyed by splitmix64-derived seeds, so results
// are reproducible across platforms and thread counts. std:: distributions
// are avoided on purpose (their streams are implementation-defined).

#include <cstdint>

#include "rsm/vec.hpp"

namespace rsm {

inline uint64_t splitmix64_next(uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stable derivation of stream seeds: hash(seed, a, b).
inline uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  uint64_t s = seed;
  uint64_t h = splitmix64_next(s);
  s ^= a + 0x9E3779B97F4A7C15ull + (h << 6);
  h = splitmix64_next(s);
  s ^= b + 0xD1B54A32D192ED03ull + (h >> 3);
  return splitmix64_next(s);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : state_) w = splitmix64_next(s);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; second value cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1, u2;
    do {
      u1 = uniform();
    } while (u1 <= 0x1.0p-60);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Vec in_box(const Vec& lo, const Vec& hi) {
    Vec x(lo.dim());
    for (int i = 0; i < x.dim(); ++i) x[i] = uniform(lo[i], hi[i]);
    return x;
  }

  Vec gaussian_vec(int dim) {
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = gaussian();
    return x;
  }

  Vec on_sphere(int dim) {
    for (;;) {
      Vec x = gaussian_vec(dim);
      double r = norm(x);
      if (r > 1e-12) return x * (1.0 / r);
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
  double spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace rsm

#pragma once

// Deterministic, bit-portable random number generation: xoshiro256++ seeded
// through splitmix64. Distributions are hand-rolled so that the stream is
// identical across platforms and standard libraries.

#include <cmath>
#include <cstdint>

namespace smeary {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& si : s_) si = splitmix64_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in (0, 1]: 53-bit mantissa, never exactly 0 (safe under log).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (no state caching; two uniforms per
  // draw, keeping the stream position a pure function of the draw count).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * M_PI * u2);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
};

// Documented replicate-seed derivation: chains splitmix64 over the cell key
// so that replicates are independent and order-free.
inline std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t m,
                                    std::uint64_t n, std::uint64_t rep) {
  std::uint64_t s = master;
  (void)splitmix64_next(s);
  s ^= 0x9E3779B97F4A7C15ull * (m + 1);
  (void)splitmix64_next(s);
  s ^= 0xBF58476D1CE4E5B9ull * (n + 1);
  (void)splitmix64_next(s);
  s ^= 0x94D049BB133111EBull * (rep + 1);
  std::uint64_t out = s;
  return splitmix64_next(out);
}

}  // namespace smeary

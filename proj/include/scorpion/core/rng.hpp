#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace scorpion {

/// Deterministic PCG32 stream seeded through splitmix64.
///
/// The draw sequence depends only on the 64-bit seed, never on platform or
/// thread count. Parallel work never shares a stream: derive child streams
/// with child(), which splits the seed as seed XOR stream-index.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : seed_(seed) {
    uint64_t x = seed;
    state_ = splitmix64(x);
    inc_ = (splitmix64(x) << 1u) | 1u;
    next_u32();
  }

  uint64_t seed() const { return seed_; }

  Rng child(uint64_t stream_index) const { return Rng(seed_ ^ stream_index); }

  uint32_t next_u32() {
    uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
    uint32_t rot = static_cast<uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  uint64_t next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32u) | next_u32();
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11u) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n == 0 returns 0.
  uint32_t below(uint32_t n) {
    if (n == 0) return 0;
    return static_cast<uint32_t>((static_cast<uint64_t>(next_u32()) * n) >> 32u);
  }

  /// Box-Muller; one fresh draw per call.
  double normal(double mean = 0.0, double sigma = 1.0) {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    return mean + sigma * z;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = below(static_cast<uint32_t>(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t seed_;
  uint64_t state_;
  uint64_t inc_;
};

}  // namespace scorpion

#pragma once

#include <cstdint>

namespace cch2 {

// Deterministic 64-bit generator (xorshift-multiply mixing).  Used instead of
// <random> distributions so that streams are reproducible byte-for-byte across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // avoid the all-zero fixed point and decorrelate small seeds
    next_u64();
    next_u64();
  }

  // Substream t of a base seed; trial t always sees the same draws.
  static Rng stream(std::uint64_t seed, std::uint64_t t) {
    return Rng(mix(seed ^ mix(t + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t next_u64() {
    state_ = mix(state_ + 0x9e3779b97f4a7c15ull);
    return state_;
  }

  // uniform in [0, 1) with 53-bit resolution
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * next_double(); }

  // uniform integer in [0, n)
  int next_below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
};

}  // namespace cch2

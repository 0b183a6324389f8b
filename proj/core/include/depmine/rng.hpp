#pragma once

#include <cstdint>
#include <random>

namespace depmine {

// Seeded random source with portable derived draws.  std::mt19937_64 output is
// fully specified by the standard, but the standard distributions are not, so
// the helpers below implement their own mappings to keep streams identical
// across platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n).  n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // Rejection sampling to avoid modulo bias.
    std::uint64_t threshold = (0ull - n) % n;
    for (;;) {
      std::uint64_t x = engine_();
      if (x >= threshold) return x % n;
    }
  }

  int next_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool next_bool(double probability) { return next_double() < probability; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace depmine

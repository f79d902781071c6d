#pragma once

#include <cstdint>

namespace wmvipd {

/// Deterministic 64-bit generator used for every randomized component
/// (block draws, sample draws, test data). The recurrence is xorshift64*:
///
///   x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27;
///   output = x * 2685821657736338717
///
/// Seeds are first mixed through one splitmix64 step so that seed 0 is a
/// valid (nonzero) state. Sequences are identical on every platform.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed = 0) : state_(mix(seed)) {
    if (state_ == 0) state_ = 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ull;
  }

  /// Uniform on {0, ..., n-1}, exact (multiply-shift with rejection).
  std::uint64_t next_below(std::uint64_t n) {
    auto wide = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(wide);
    if (low < n) {
      const std::uint64_t cutoff = (0 - n) % n;
      while (low < cutoff) {
        wide = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(wide);
      }
    }
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace wmvipd

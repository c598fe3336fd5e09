#pragma once

#include <cstdint>

namespace pebble {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

/// splitmix64 finalizer (Steele/Lea/Flood mixing constants).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Deterministic sub-stream seed: used for per-trial, per-point and per-n streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
  return mix64(master ^ mix64(salt + kGolden));
}

/// Identifies one trial's random stream. Generator state is a pure function
/// of (master_seed, trial_index), so trials replay identically regardless of
/// execution order or worker count.
struct SeedPolicy {
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

/// splitmix64 counter generator. Not cryptographic; fast, portable, and
/// bit-reproducible across platforms (unlike std:: distributions).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  explicit SplitMix64(SeedPolicy sp)
      : state_(derive_seed(sp.master_seed, sp.trial_index)) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  /// Unbiased uniform draw from [0, bound). bound must be >= 1.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection; exact uniformity.
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace pebble

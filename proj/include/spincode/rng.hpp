#pragma once

#include <cstdint>

namespace spincode {

/// splitmix64: tiny, seed-stable across platforms.  Used everywhere a test or
/// optimizer needs reproducible randomness, so outputs are bit-identical for a
/// fixed seed regardless of the standard library.
struct SplitMix64 {
  uint64_t state = 0x9e3779b97f4a7c15ULL;

  explicit SplitMix64(uint64_t seed = 0) : state(seed + 0x9e3779b97f4a7c15ULL) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// uniform in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// uniform in [-1, 1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

  /// fresh generator for an independent stream (parallel restarts)
  SplitMix64 split() { return SplitMix64(next()); }
};

}  // namespace spincode

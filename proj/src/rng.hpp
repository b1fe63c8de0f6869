/// @file rng.hpp
/// @brief Seeded 64-bit LCG for bit-reproducible start vectors.

#pragma once

#include <cstdint>

namespace svmg {

struct Lcg64 {
  uint64_t state;

  explicit Lcg64(uint64_t seed) : state(seed) {}

  uint64_t next_u64() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }

  /// uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// uniform in [-1,1)
  double next_symmetric() { return 2.0 * next_double() - 1.0; }
};

}  // namespace svmg

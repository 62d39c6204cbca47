#pragma once

#include <cstdint>
#include <random>

namespace shotgun {

// All randomness in the library flows through mt19937_64 seeded with a
// caller-supplied 64-bit value. std::uniform_int_distribution is not
// portable across standard library implementations, so bounded draws use
// the masked-rejection scheme below; results are bit-identical everywhere.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform draw from [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  std::uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    std::uint64_t r = rng() & mask;
    if (r < bound) return r;
  }
}

}  // namespace shotgun

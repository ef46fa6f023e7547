#pragma once

// Portable seeded randomness. Every stochastic result is driven by
// std::mt19937_64, whose output sequence is fixed by the C++ standard, so a
// seed reproduces the same bits on every conforming platform.
//
// Substreams: stream `index` of `seed` is an mt19937_64 seeded with
// splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15).

#include <cstdint>
#include <random>

namespace comprun {

using Engine = std::mt19937_64;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline Engine substream(std::uint64_t seed, std::uint64_t index) {
  return Engine(splitmix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL));
}

}  // namespace comprun

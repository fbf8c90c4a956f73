#pragma once

#include <cstdint>
#include <random>

namespace uavmec {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a stream tag
// (splitmix64 finalizer). Used for per-episode and per-component streams.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace uavmec

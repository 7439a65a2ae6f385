// Apache License, Version 2.0, refer to LICENSE.txt
#pragma once

#include <cstdint>
#include <random>

namespace corrnoise {

// splitmix64 finalizer; scrambles user seeds and derives substream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed for the index-th replicate stream of a run keyed by `seed`.  Stream r
// is reproducible without generating streams 0..r-1, so replicates can be
// produced out of order or in parallel.
constexpr std::uint64_t substream_seed(std::uint64_t seed,
                                       std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^
                    (0x9e3779b97f4a7c15ull * (index + 1)));
}

// mt19937_64 seeded through splitmix64 so that small consecutive user seeds
// give uncorrelated states.  Within-build determinism is guaranteed;
// cross-implementation bit-exactness is not (distribution algorithms are
// implementation-defined).
inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(splitmix64(seed));
}

}  // namespace corrnoise

#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace tap {

inline std::pair<int, int> norm_pair(int u, int v) {
  return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

// unbiased uniform draw in [0, bound); bound 0 or 1 yields 0
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  std::uint64_t r;
  do {
    r = rng();
  } while (r < threshold);
  return r % bound;
}

// seed mixer so per-trial streams are decorrelated
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tap

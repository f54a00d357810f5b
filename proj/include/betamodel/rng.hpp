#pragma once

#include <cstdint>
#include <random>

namespace betamodel {

// Identifies one reproducible random stream: an experiment-level base seed
// plus a stream index (the replication number in Monte Carlo runs).
struct Seed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;
};

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Engine for sub-stream `lane` of `seed`. Distinct (base, stream, lane)
// triples give statistically independent engines.
inline std::mt19937_64 make_engine(Seed seed, std::uint64_t lane = 0) {
  const std::uint64_t key =
      mix64(mix64(mix64(seed.base) ^ seed.stream) ^ (lane + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                    static_cast<std::uint32_t>(seed.stream),
                    static_cast<std::uint32_t>(lane)};
  return std::mt19937_64(seq);
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace betamodel

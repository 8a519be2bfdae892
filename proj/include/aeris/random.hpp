#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace aeris {

using Rng = std::mt19937_64;

// Named random streams. Every stochastic element of a run draws from its own
// stream derived from the run seed, so methods compared under the same seed
// see identical arrivals, deviations, shadowing and fading.
enum class Stream : std::uint64_t {
  kShadow = 1,
  kDeviation = 2,
  kHistory = 3,
  kFlows = 4,
  kFading = 5,
  kCity = 6,
  kTrials = 7,
  kSweep = 8,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, Stream stream,
                                 std::initializer_list<std::uint64_t> tags = {}) {
  std::uint64_t h = splitmix64(base ^ splitmix64(static_cast<std::uint64_t>(stream)));
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(std::uint64_t base, Stream stream,
                    std::initializer_list<std::uint64_t> tags = {}) {
  return Rng(derive_seed(base, stream, tags));
}

}  // namespace aeris

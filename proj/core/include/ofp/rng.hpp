#pragma once

#include <cstdint>
#include <random>

namespace ofp::sim {

using Rng = std::mt19937_64;

// Independent streams per purpose so that, e.g., the protocol under test never
// shifts the placement or mobility draws of a trial.
enum class Stream : std::uint64_t {
  Placement = 1,
  Radio = 2,
  Channel = 3,
  Mobility = 4,
  Protocol = 5,
  Hello = 6,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(stream)) ^ index);
}

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, stream, index));
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace ofp::sim

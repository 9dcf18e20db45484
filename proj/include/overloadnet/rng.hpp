#pragma once

#include <cstdint>

// Counter-based pseudo-random numbers built on the splitmix64 output function.
// Every draw is addressed by (seed, stream, counter), so sampling is
// independent of iteration order and repeated lookups of the same address
// return the same value. Streams are used one per (node, class) arrival
// process.

namespace onet::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer; bijective on uint64.
constexpr std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Key of substream `stream` under `seed`: the (stream+1)-th splitmix64 output.
constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix(seed + (stream + 1) * kGolden);
}

constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) {
  return mix(key + (counter + 1) * kGolden);
}

// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t x) {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

constexpr double uniform(std::uint64_t key, std::uint64_t counter) {
  return to_unit(at(key, counter));
}

}  // namespace onet::rng

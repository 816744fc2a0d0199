#pragma once

#include <cstdint>

namespace dicke {

// splitmix64: tiny counter-style generator with a well-mixed finalizer.
// Chosen over std::mt19937_64 for the trajectory engine because its state is
// a single documented word, which keeps seeding and record reproducibility
// trivially portable.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1): (k + 1/2) * 2^-53 for k < 2^53.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
};

// Decorrelated per-stream seed derived from a master seed and a stream index.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  SplitMix64 mix(master ^ (0x9e3779b97f4a7c15ull * (index + 1)));
  mix.next();
  return mix.next();
}

}  // namespace dicke

#pragma once

#include <cstdint>

namespace irsa {

/// splitmix64: fixed, platform-independent stream so that simulation outputs
/// are reproducible bit-for-bit from a seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) via multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

/// Splittable-stream seed derivation: trial t of stream j gets an independent
/// generator, so parallel and sequential trial orders agree.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

}  // namespace irsa

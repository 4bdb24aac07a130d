#pragma once

#include <cstdint>

namespace medfog {

/// Deterministic, platform-independent PRNG based on SplitMix64
/// (public-domain algorithm by Sebastiano Vigna, 2014 constants).
/// Uniform doubles are produced from the top 53 bits, so identical
/// seeds yield bit-identical streams on every platform. Bump
/// kRngVersion if the algorithm or the substream derivation changes.
inline constexpr int kRngVersion = 1;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, 1), both endpoints excluded.
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Stateless scramble; used to derive substream seeds.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  /// Deterministic seed for the substream keyed by (seed, stream id).
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) {
    return mix(seed) ^ mix(stream_id ^ 0x517CC1B727220A95ULL);
  }

  /// Independent substream keyed by (seed, stream id). Streams with the
  /// same seed but different ids are decorrelated; the same (seed, id)
  /// always yields the same stream.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream_id) {
    return SplitMix64(derive_seed(seed, stream_id));
  }

 private:
  std::uint64_t state_;
};

}  // namespace medfog

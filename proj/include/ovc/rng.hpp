#pragma once

#include <cstdint>

namespace ovc {

// splitmix64: tiny counter-based generator with portable, bit-reproducible
// output on every platform. All synthetic content derives from it so that
// identical seeds give identical byte streams everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased enough for simulation content; multiply-shift keeps it exact
  // and platform-independent.
  std::uint32_t next_below(std::uint32_t n) {
    return std::uint32_t((static_cast<unsigned __int128>(next()) * n) >> 64);
  }

  // Uniform in [0, 1).
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// Derives an independent stream key from a seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 rng(seed ^ (tag * 0xD6E8FEB86659FD93ull));
  return rng.next();
}

}  // namespace ovc

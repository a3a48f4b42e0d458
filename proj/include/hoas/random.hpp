#pragma once

#include <cstdint>

namespace hoas {

/// SplitMix64 (Steele, Lea, Flood 2014). The constants are part of the
/// generator's contract: a seed names the same term sequence on every
/// platform.
class SplitMix64 {
 public:
  static constexpr std::uint64_t gamma = 0x9E3779B97F4A7C15ULL;
  static constexpr std::uint64_t mix1 = 0xBF58476D1CE4E5B9ULL;
  static constexpr std::uint64_t mix2 = 0x94D049BB133111EBULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += gamma);
    z = (z ^ (z >> 30)) * mix1;
    z = (z ^ (z >> 27)) * mix2;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by rejection; bound must be nonzero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  constexpr std::uint64_t state() const noexcept { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace hoas

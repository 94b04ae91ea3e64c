#pragma once

#include <cstdint>

namespace gensmooth {

/// Counter-based generator: draw(k) is the k-th output of the SplitMix64
/// stream started at `seed`, computed directly from (seed, k) with no
/// mutable state.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t draw(std::uint64_t counter) const {
    return mix(seed_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  /// Index in [0, n) via the high half of a 128-bit product.
  std::uint64_t index(std::uint64_t counter, std::uint64_t n) const {
    __extension__ using u128 = unsigned __int128;
    const u128 wide = static_cast<u128>(draw(counter)) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  /// Uniform in (0, 1), never exactly 0.
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(draw(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by Box-Muller on the counters 2c and 2c+1.
  double normal(std::uint64_t counter) const;

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace gensmooth

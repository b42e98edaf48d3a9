#pragma once

#include <cstdint>
#include <random>

namespace majdyn {

/// SplitMix64 finalizer. Used as the mixing function for every derived seed
/// and for the counter-based tie coins.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(mix64(a) ^ (b * 0xd1b54a32d192ed03ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) noexcept {
  return derive_seed(derive_seed(a, b), c);
}

/// Seeded sampler. The engine is std::mt19937_64 (bit-exact across
/// platforms); the mappings to bounded integers and unit reals are done here
/// because the std distributions are implementation-defined.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = (~std::uint64_t{0} / bound) * bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace majdyn

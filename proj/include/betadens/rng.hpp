#pragma once

#include <cstdint>
#include <random>

namespace betadens {

/// SplitMix64 finalizer; spreads nearby seeds (e.g. master ^ trial) over the
/// whole state space before they reach the engine.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of Monte Carlo trial `trial` under `master`.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return master ^ trial;
}

/// Seeded 64-bit generator with portable uniform and coin draws.
///
/// The standard distributions are implementation-defined, so the conversions
/// below are written out to keep samples bit-identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Fair coin in {0, 1}; consumes one engine word per 64 flips.
  int coin() {
    if (bits_left_ == 0) {
      bits_ = engine_();
      bits_left_ = 64;
    }
    const int bit = static_cast<int>(bits_ & 1U);
    bits_ >>= 1;
    --bits_left_;
    return bit;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace betadens

#pragma once

#include <cstdint>

namespace macwt {

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: (seed, task, trial) selects an independent
// substream. Whole-project convention so that results are reproducible no
// matter how trials are partitioned across workers.
inline constexpr std::uint64_t derive_stream(std::uint64_t seed,
                                             std::uint64_t task,
                                             std::uint64_t trial) {
  std::uint64_t s = mix64(seed ^ 0x8f462907e7314a4dull);
  s = mix64(s ^ task);
  s = mix64(s ^ trial);
  return s;
}

// Minimal deterministic generator (SplitMix64 sequence). Portable across
// platforms, unlike the distributions in <random>.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t task = 0,
               std::uint64_t trial = 0)
      : state_(derive_stream(seed, task, trial)) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) via Lemire rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    using u128 = unsigned __int128;
    std::uint64_t x = next_u64();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<u128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace macwt

#pragma once

#include <cstdint>

namespace defekt {

// SplitMix64. Small, fast, and good enough to drive uniform sampling of
// coefficient tuples; streams for independent samples are derived by
// hashing (seed, index) so results never depend on the worker count.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t uniform(std::uint64_t n) {
    const std::uint64_t limit = max() - max() % n;
    std::uint64_t v;
    do {
      v = (*this)();
    } while (v >= limit);
    return v % n;
  }

  // Independent stream for sample `index` under `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ 0x6a09e667f3bcc909ULL);
    std::uint64_t a = mix();
    SplitMix64 mix2(a ^ (index * 0xd1b54a32d192ed03ULL));
    return SplitMix64(mix2());
  }

 private:
  std::uint64_t state_;
};

}  // namespace defekt

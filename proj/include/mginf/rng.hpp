#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mginf {

/// SplitMix64 (Steele, Lea, Flood). One instance per simulated cycle, keyed by
/// (seed, cycle index), so the stream of any cycle is independent of which
/// worker runs it. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 keyed(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t base = keyed();
    return SplitMix64(mix(base + 0x9e3779b97f4a7c15ULL * (index + 1)));
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double exponential(double rate) noexcept { return -std::log1p(-uniform()) / rate; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace mginf

#pragma once

#include <cstdint>
#include <limits>

namespace junta {

/// Key of a counter-based random stream. Trial `i` of an experiment uses
/// `{seed, i}`, so serial and parallel runs draw identical numbers.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  RngSeed with_stream(std::uint64_t s) const noexcept { return {seed, s}; }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Stafford "mix13" finalizer used by SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: the i-th output is a pure function of
/// (seed, stream, i). Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(RngSeed key) noexcept
      : key_(mix64(key.seed ^ mix64(key.stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    return mix64(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Unbiased integer in [0, bound), bound > 0. Rejects the low
  /// 2^64 mod bound outputs, then reduces.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t r = (*this)();
    while (r < threshold) r = (*this)();
    return r % bound;
  }

  bool coin(double p_true) noexcept { return uniform() < p_true; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace junta

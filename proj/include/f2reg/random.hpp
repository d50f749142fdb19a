#pragma once

#include <cstdint>

namespace f2reg {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stream identifiers; every module draws from its own stream of one seed.
enum class Stream : std::uint64_t {
  kSpanningFamily = 1,
  kRounding = 2,
  kSubspaceSampler = 3,
  kDeviationPairs = 4,
  kHyperplaneSampler = 5,
  kTestData = 6,
};

/// Counter-based generator: value(counter) depends only on (seed, stream,
/// substream, counter), so draws can be evaluated in any order or in parallel.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, Stream stream, std::uint64_t substream = 0)
      : key_(mix64(mix64(seed) ^ mix64(static_cast<std::uint64_t>(stream) * 0x632be59bd9b4e019ULL) ^
                   mix64(substream + 0x1234567ULL))) {}

  std::uint64_t at(std::uint64_t counter) const { return mix64(key_ ^ mix64(counter)); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform_at(std::uint64_t counter) const {
    return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
  }

  std::uint64_t next() { return at(counter_++); }
  double next_uniform() { return uniform_at(counter_++); }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

  CounterStream substream(std::uint64_t id) const {
    CounterStream s = *this;
    s.key_ = mix64(key_ ^ mix64(id ^ 0xa5a5a5a5a5a5a5a5ULL));
    s.counter_ = 0;
    return s;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace f2reg

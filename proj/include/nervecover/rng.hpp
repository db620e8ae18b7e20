#pragma once

#include <cstdint>

namespace nervecover {

// Counter-based generator: the k-th output of a stream is a pure function of
// (seed, stream, k). Workers draw from disjoint streams, so merged results do
// not depend on scheduling and a run is reproducible for a fixed
// (seed, worker count) pair on any platform. The mixer is the standard
// splitmix64 finalizer, applied to a Weyl sequence over the keyed counter.
class counter_rng {
 public:
  counter_rng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix(seed ^ 0x9e3779b97f4a7c15ull) ^ mix(stream * 0xbf58476d1ce4e5b9ull)),
        counter_(0) {}

  std::uint64_t next_u64() {
    std::uint64_t z = state_ + (++counter_) * 0x9e3779b97f4a7c15ull;
    return mix(z);
  }

  // Uniform double in [0, 1) with 53 random bits. Avoids
  // std::uniform_real_distribution, whose output is implementation-defined.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection from the top of the range,
  // so the result is unbiased and platform-independent.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  std::uint64_t counter_;
};

}  // namespace nervecover

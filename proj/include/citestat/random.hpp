#pragma once

// Seeded random streams. Substreams are derived from (master seed, keys) with
// SplitMix64 so that a given author always sees the same stream regardless of
// evaluation order. Sampling is implemented here rather than through the
// <random> distributions, whose outputs differ between standard libraries.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace citestat {

struct Seed {
  std::uint64_t master = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream keyed by the master seed and an ordered list of integers.
  static Rng substream(Seed seed, std::initializer_list<std::uint64_t> keys);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // Index drawn with probability weights[i] / sum(weights).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace citestat

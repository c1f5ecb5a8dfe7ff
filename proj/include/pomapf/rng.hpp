#pragma once

#include <cstdint>
#include <random>

namespace pomapf {

/// Purposes for independent substreams derived from one seed.
enum class Stream : std::uint64_t {
  kObstacles = 1,
  kStarts = 2,
  kGoals = 3,
  kPolicy = 4,
  kUnseeded = 5,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Deterministic generator: std::mt19937_64 (its output sequence is fixed by the
/// standard) with our own range reduction, since the std distributions are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Substream keyed by (seed, purpose, index).
  static Rng substream(std::uint64_t seed, Stream purpose, std::uint64_t index = 0) {
    return Rng(mix64(mix64(seed ^ mix64(static_cast<std::uint64_t>(purpose))) + index));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool coin(double p) { return uniform() < p; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

}  // namespace pomapf

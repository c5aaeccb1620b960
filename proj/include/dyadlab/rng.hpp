#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dyadlab {

/// Seeded generator with hand-rolled distributions so that the same seed
/// yields the same stream on every platform (std distributions are not
/// portable across standard libraries). The engine is mt19937_64; report
/// headers name it so runs can be reproduced.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Decorrelated child stream for instance `stream` of a suite seeded by
  /// `seed` (splitmix64 finalizer over the pair).
  static Rng child(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix(seed + 0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  bool bernoulli(double prob) { return uniform() < prob; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace dyadlab

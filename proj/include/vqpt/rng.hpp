#pragma once

#include <cstdint>
#include <initializer_list>

namespace vqpt {

/// Counter-based pseudo random generator.
///
/// Draw number c of a stream with seed s is a pure function of (s, c): the
/// SplitMix64 finalizer applied to s + (c+1)*golden. Identical seeds give
/// identical sequences on every platform; no std:: distributions are used.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal();

  /// Independent stream keyed by this generator's seed and the given keys.
  /// Does not advance this generator.
  Rng derive(std::initializer_list<std::uint64_t> keys) const;

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t z);

} // namespace vqpt

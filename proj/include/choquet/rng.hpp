#pragma once

#include <cstdint>
#include <random>

namespace choquet {

/// Deterministic across platforms: mt19937_64's output sequence is fixed
/// by the standard, and the real/integer conversions below are ours (the
/// std distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  bool chance(double probability) { return uniform() < probability; }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the index-th sample in a corpus (splitmix64 of seed and index).
/// The schedule does not depend on grid depth, so corpora at different
/// depths are paired sample by sample.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace choquet

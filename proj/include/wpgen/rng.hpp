#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace wpgen {

/// splitmix64 finalizer; used for seed derivation and stream splitting.
std::uint64_t mix64(std::uint64_t x);

/// Folds a string into a 64-bit hash (FNV-1a) for seed derivation.
std::uint64_t hash_string(std::string_view s);

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; all distributions are derived here from
/// the raw 64-bit stream (never via std::*_distribution, whose mapping is
/// implementation-defined), so identical seeds give identical draws on every
/// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n). n must be > 0.
  std::size_t index(std::size_t n);

  /// Independent child stream; the same (seed, stream id) pair always yields
  /// the same stream, so splitting commutes with evaluation order.
  Rng split(std::uint64_t stream_id) const {
    return Rng(mix64(seed_ ^ mix64(stream_id + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace wpgen

#pragma once

#include <cstdint>
#include <random>

namespace qcorr {

/// Name recorded in sweep CSV headers.
inline constexpr const char* kPrngName = "mt19937_64";

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// i-th output (0-based) of a SplitMix64 stream seeded with `seed`.
std::uint64_t splitmix64_stream(std::uint64_t seed, std::uint64_t index) noexcept;

/// Seeded generator with toolchain-independent derived draws.
///
/// std::*_distribution algorithms are implementation-defined; these are
/// written out so a (seed, call sequence) pair gives the same doubles on
/// every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (both outputs used).
  double normal();
  /// Exp(1) variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qcorr

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace qclab {

/// Deterministic splittable random stream.
///
/// A child stream is a pure function of the parent's seed and the child's
/// label, so children never depend on how much of the parent (or of a
/// sibling) has been consumed. Floating-point conversions are implemented
/// here rather than through <random> distributions so that transcripts are
/// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  Rng child(std::string_view label) const;
  Rng child(std::uint64_t index) const;

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  bool bernoulli(double p);
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform n-bit string, n <= 64.
  std::uint64_t bits(int n);
  double normal();
  /// Circularly symmetric complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace qclab

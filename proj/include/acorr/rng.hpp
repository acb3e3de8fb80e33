#pragma once

// Seedable random stream with platform-independent variate generation.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the C++
// standard. The normal and gamma transforms are implemented here instead of
// using <random> distributions, whose algorithms vary between standard
// library implementations.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <string_view>

namespace acorr {

class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64+splitmix64-derive";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a (base seed, path...) tuple, e.g. (seed, run, stream).
  static Rng derive(std::uint64_t base_seed, std::initializer_list<std::uint64_t> path);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Gamma(shape, 1) (Marsaglia-Tsang), shape > 0.
  double gamma(double shape);

  /// Chi-square with k degrees of freedom.
  double chi_square(double k) { return 2.0 * gamma(0.5 * k); }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace acorr

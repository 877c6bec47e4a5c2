#pragma once

#include <cstdint>

namespace specaug {

/// 64-bit finalizer used to build the counter-based generator (the SplitMix64
/// mixing function). Bijective, so distinct counters never collide.
std::uint64_t mix64(std::uint64_t z);

/// Stateless hash of a 4-word key; the basis of every random draw here.
std::uint64_t counter_hash(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

/// Inverse standard normal CDF (Wichura's PPND16 rational approximation),
/// accurate to roughly double precision over (0, 1).
double inverse_normal_cdf(double p);

/// Deterministic random stream keyed by (seed, image_index, replication_index,
/// stage). Component draws are pure functions of the key and a component
/// counter, so images, replications and bands can be processed in any order
/// or in parallel with identical results.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t image_index, std::uint64_t replication_index,
              std::uint64_t stage = 0);

  /// Standard normal draw for a given component counter. Counter-based:
  /// no state is consumed.
  double gaussian_at(std::uint64_t component_index) const;

  /// Uniform in (0, 1) for a given component counter.
  double uniform_at(std::uint64_t component_index) const;

  /// Sequential draws for parameter sampling (flips, angles, displacement
  /// vectors). These advance an internal counter in a domain separated from
  /// the per-component draws above.
  std::uint64_t next_u64();
  double next_uniform01();
  double next_uniform(double lo, double hi);
  bool next_bernoulli(double p);
  double next_gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t seq_ = 0;
};

}  // namespace specaug

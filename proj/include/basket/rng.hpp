#pragma once

#include <cstdint>

namespace basket {

/// SplitMix64: the project-wide random number generator.
///
/// Every stochastic component (Gibbs chains, simulated annealing, instance
/// generation) draws from this generator so that a given 64-bit seed
/// reproduces runs bit-for-bit on any platform. The state advances by a
/// fixed odd constant and the output is a finalizing hash of the counter,
/// so streams for distinct seeds are independent for practical purposes.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), unbiased (rejection on the top band).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + u01() * (hi - lo); }

  bool bernoulli(double p) { return u01() < p; }

 private:
  std::uint64_t state_;
};

/// Decorrelated seed for a numbered substream (parallel chains, per-instance
/// generators, per-call sampling seeds). Hashes seed XOR a spread stream id.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return mix.next();
}

}  // namespace basket

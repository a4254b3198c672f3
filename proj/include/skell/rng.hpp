#pragma once

#include <cstdint>
#include <random>

namespace skell {

/// Identifies a reproducible random stream. Parallel samplers derive one
/// substream per fixed-size shard, so output never depends on the thread count.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// 64-bit Mersenne Twister seeded from (seed, stream, substream) through a seed
/// sequence, with hand-written variate transforms so draws are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0, std::uint64_t substream = 0);
  explicit Rng(const RngState& state, std::uint64_t substream = 0)
      : Rng(state.seed, state.stream_id, substream) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();

  /// Standard normal (Marsaglia polar method; the second value is cached).
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape);

  /// Beta(a, b) as G_a / (G_a + G_b).
  double beta(double a, double b);

  double chi_square(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace skell

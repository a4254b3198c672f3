#pragma once

#include <cstdint>
#include <string_view>

#include "skell/linalg.hpp"
#include "skell/model.hpp"
#include "skell/rng.hpp"

namespace skell {

/// Stochastic constructions of the same skew-elliptical law.
///
///   conditioning     mu + w(delta |U0| + D U) with (U0, U) spherical in R^{n+1};
///                    the reference sampler.
///   rep_a            R0 times a partitioned uniform point of the n-sphere in R^{n+1}.
///   rep_b_corrected  R0 (d1, d2) split with d1^2 ~ Beta(1/2, n/2), |U^(1)| = 1.
///   rep_b_printed    d1^2 ~ Beta(1/2, (n-1)/2) and |U^(1)| ~ Uniform[0, 1].
///   rep_c_corrected  separate radial parts R1, Rn of the skewing and symmetric terms.
///   rep_c_printed    R1 = R0 d1, Rn = R0 d2 with the printed split of rep_b_printed.
enum class Variant { conditioning, rep_a, rep_b_corrected, rep_b_printed, rep_c_corrected, rep_c_printed };

std::string_view to_string(Variant v);
/// Accepts the canonical tags plus rep_b_paper / rep_c_paper as aliases of the printed variants.
Variant variant_from_string(std::string_view s);

/// Uniform point on the unit sphere of R^n (normalised Gaussian vector).
Vector sample_unit_sphere(int n, Rng& rng);
void sample_unit_sphere(int n, Rng& rng, double* out);

double sample_radial(const RadialLaw& law, Rng& rng);

/// Reference sampler. Normal scale mixtures draw (U0, U) = sqrt(eta) (N0, P^{1/2} N)
/// directly; custom generators use R0 times a uniform sphere point.
/// threads <= 0 selects default_threads().
SampleMatrix sample_conditioning(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                 std::int64_t count, const RngState& state, int threads = 0);

SampleMatrix sample_representation(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                   Variant variant, std::int64_t count, const RngState& state,
                                   int threads = 0);

/// mu + sqrt(eta) Z with Z a centred skew-normal draw and eta from `mixing`.
SampleMatrix sample_smsn(const SkewEllipticalParams& params, const MixingLaw& mixing, std::int64_t count,
                         const RngState& state, int threads = 0);

/// Skew-uniform vector d1 delta |U^(1)| + d2 D U^(n) with d1^2 ~ Beta(1/2, (n-1)/2)
/// and |U^(1)| ~ Uniform[0, 1] (for n = 1, d1 = 1).
SampleMatrix sample_skew_uniform(const Vector& skewing, std::int64_t count, const RngState& state,
                                 int threads = 0);

}  // namespace skell

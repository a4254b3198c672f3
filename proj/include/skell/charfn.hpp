#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "skell/linalg.hpp"
#include "skell/model.hpp"
#include "skell/rng.hpp"

namespace skell {

/// A characteristic-function value with the route that produced it and an
/// error estimate. Quadrature routes report an infinite estimate when
/// |t| * max(scale) exceeds kCfWarrantyLimit (oscillation out of warranty).
struct CfValue {
  std::complex<double> value;
  std::string method;
  double err_estimate = 0.0;
};

inline constexpr double kCfWarrantyLimit = 20.0;

/// Closed form exp(i t'mu - t'Wt/2) (1 + i tau(t'd_w)) of the skew-normal law.
CfValue cf_skew_normal(const SkewEllipticalParams& params, const Vector& t);

/// One-dimensional integral over the skewing coordinate U0 >= 0:
///   2 e^{i t'mu} integral_0^inf e^{i s u} phi_u(t' X t) f(u) du
/// with s = t'd_w, X the residual dispersion and phi_u the conditional
/// characteristic generator. Normal and Student-t families only.
CfValue cf_conditional_integral(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                const Vector& t);

/// Radial route: e^{i t'mu} E over (R0, d) of the characteristic function of
/// R0 (d d_w |U1| + sqrt(1 - d^2) w D P^{1/2} U^(n)).
///   corrected: d^2 ~ Beta(1/2, n/2), |U1| = 1, sphere argument |P^{1/2} D w t|^2.
///   printed:   d^2 ~ Beta(1/2, (n-1)/2), |U1| ~ Uniform[0, 1], sphere argument
///              |D W^{1/2} w t|^2. For n = 1 the split is degenerate at d = 1.
enum class RadialReading { corrected, printed };
std::string_view to_string(RadialReading r);
RadialReading radial_reading_from_string(std::string_view s);

CfValue cf_generic(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& t,
                   RadialReading reading = RadialReading::corrected);

/// Skew-t: real part is the elliptical-t generator at t'Wt (a K_{nu/2} form), the
/// imaginary part a sine integral against K_{(nu+1)/2}.
///   corrected: prefactor (t'Xt)^{(nu+1)/4}, which the integral identity requires.
///   printed:   prefactor (t'Xt)^{nu/2}.
enum class PrefactorReading { corrected, printed };
CfValue cf_skew_t(const SkewEllipticalParams& params, double dof, const Vector& t,
                  PrefactorReading reading = PrefactorReading::corrected);

/// Characteristic generator of the elliptical Student-t law: E exp(i t'Y) = value(t'Wt).
double elliptical_t_cf(double dof, double quad_form);

/// Skew-uniform vector d1 delta |U^(1)| + d2 D U^(n) with d1^2 ~ Beta(1/2, (n-1)/2)
/// and |U^(1)| ~ Uniform[0, 1].
///   sphere_cf:      quadrature over d1 with the sphere characteristic function;
///   hypergeometric: the same with its 0F1 form;
///   symmetric_claim: 0F1(n/2; -|t|^2/4), the closed form stated for delta = 0.
enum class SkewUniformForm { sphere_cf, hypergeometric, symmetric_claim };
std::string_view to_string(SkewUniformForm f);
CfValue cf_skew_uniform(const Vector& skewing, const Vector& t, SkewUniformForm form);

/// (1/N) sum exp(i t'X_j) over reference-sampler draws; err_estimate = 4/sqrt(N).
CfValue cf_monte_carlo(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& t,
                       std::int64_t count, const RngState& state, int threads = 0);

}  // namespace skell

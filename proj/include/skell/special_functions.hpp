#pragma once

#include <string_view>

namespace skell {

double log_gamma(double x);
double gamma_fn(double x);
/// log B(a, b), evaluated through log-gamma.
double log_beta(double a, double b);

/// Bessel function of the first kind J_nu(x), nu >= 0, x >= 0.
/// Small arguments use the 0F1 relation; larger ones the libstdc++ Steed/asymptotic kernel.
double bessel_j(double nu, double x);

/// Modified Bessel function of the second kind K_nu(x), x > 0. Negative orders use
/// K_{-nu} = K_nu.
double bessel_k(double nu, double x);

/// x^m K_m(x) / (2^{m-1} Gamma(m)): the characteristic generator of a Student-t law
/// with 2m degrees of freedom, evaluated at x = sqrt(2m * s). Equals 1 at x = 0.
double scaled_bessel_k(double m, double x);

/// Largest |z| (for z < 0) at which the direct 0F1 series is summed; beyond it the
/// Bessel relation is used to avoid cancellation.
inline constexpr double kHyp0f1SeriesBound = 196.0;

/// Generalised hypergeometric 0F1(; gamma; z).
double hyp0f1(double gamma, double z);

/// Direct series summation of 0F1 with no Bessel fallback (extended precision
/// partial sums). Exposed for cross-checks.
double hyp0f1_series(double gamma, double z);

/// The five equivalent closed forms of the characteristic function of a uniform
/// point on the unit sphere in R^n.
enum class OmegaMethod {
  bessel,             // Gamma(n/2) (2/t)^{(n-2)/2} J_{(n-2)/2}(t)
  interval_integral,  // Beta-weighted integral over u in [-1, 1]
  angular_integral,   // integral over theta in [0, pi] against sin^{n-2}
  series,             // explicit power series with Gamma-ratio coefficients
  hyp0f1,             // 0F1(n/2; -t^2/4)
};

std::string_view to_string(OmegaMethod m);
OmegaMethod omega_method_from_string(std::string_view s);

/// Characteristic function of U^(n) at squared norm t_norm_sq = |t|^2.
/// n = 1 is the two-point sphere {-1, +1}: cos |t| for every method.
double omega_n(int n, double t_norm_sq, OmegaMethod method = OmegaMethod::bessel);

/// The angular integral with |t|^2 (not |t|) inside the cosine, as one printed
/// variant of the formula has it. Kept only for adjudication.
double omega_n_angular_squared_argument(int n, double t_norm_sq);

/// tau(x) = sqrt(2/pi) * integral_0^x exp(u^2 / 2) du, odd in x.
/// Throws RangeError for |x| > kTauMaxArgument.
inline constexpr double kTauMaxArgument = 37.0;
double tau(double x);

/// Standard normal CDF.
double normal_cdf(double x);
/// CDF of the standard Student-t law with `dof` degrees of freedom.
double student_t_cdf(double x, double dof);

}  // namespace skell

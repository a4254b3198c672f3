#include "skell/special_functions.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"

namespace skell {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSeriesTermCap = 500;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// J_nu for any real order. Negative non-integer orders go through the reflection
// J_{-a} = cos(a pi) J_a - sin(a pi) Y_a.
double bessel_j_any_order(double nu, double x) {
  if (nu >= 0.0) return bessel_j(nu, x);
  const double a = -nu;
  if (a == std::floor(a)) {
    const double sign = (static_cast<long long>(a) % 2 == 0) ? 1.0 : -1.0;
    return sign * bessel_j(a, x);
  }
  return std::cos(a * kPi) * bessel_j(a, x) - std::sin(a * kPi) * std::cyl_neumann(a, x);
}

double bessel_i_any_order(double nu, double x) {
  if (nu >= 0.0) return std::cyl_bessel_i(nu, x);
  const double a = -nu;
  return std::cyl_bessel_i(a, x) + (2.0 / kPi) * std::sin(a * kPi) * std::cyl_bessel_k(a, x);
}

// 0F1 through the Bessel relations:
//   0F1(g; -x^2/4) = Gamma(g) (x/2)^{1-g} J_{g-1}(x)
//   0F1(g; +x^2/4) = Gamma(g) (x/2)^{1-g} I_{g-1}(x)
double hyp0f1_bessel(double g, double z) {
  const double x = 2.0 * std::sqrt(std::abs(z));
  const double scale = std::tgamma(g) * std::pow(0.5 * x, 1.0 - g);
  return z < 0.0 ? scale * bessel_j_any_order(g - 1.0, x) : scale * bessel_i_any_order(g - 1.0, x);
}

struct SeriesSum {
  long double value;
  bool converged;
};

// Sums a power series given its leading term and term ratio. Stops when the
// next term drops below 1e-16 of the partial sum once terms are decreasing.
template <typename Ratio>
SeriesSum sum_series(long double first, Ratio ratio, int cap) {
  long double sum = first;
  long double term = first;
  for (int k = 0; k < cap; ++k) {
    const long double next = term * ratio(k);
    sum += next;
    if (std::fabs(next) <= 1e-16L * std::fabs(sum) && std::fabs(next) <= std::fabs(term)) {
      return {sum, true};
    }
    term = next;
  }
  return {sum, false};
}

SeriesSum hyp0f1_raw_series(double g, double z, int cap) {
  const long double lz = z;
  const long double lg = g;
  return sum_series(
      1.0L, [&](int k) { return lz / ((lg + k) * (k + 1)); }, cap);
}

double omega_bessel(int n, double t) {
  if (t < 1e-150) return 1.0;
  const double order = 0.5 * (n - 2);
  return std::tgamma(0.5 * n) * std::pow(2.0 / t, order) * bessel_j_any_order(order, t);
}

double omega_interval(int n, double t) {
  const double weight_power = 0.5 * (n - 3);
  const double norm = std::exp(log_gamma(0.5 * n) - log_gamma(0.5 * (n - 1))) / std::sqrt(kPi);
  quadrature::Options opt{1e-13, 1e-13, 4000};
  double integral = 0.0;
  if (n % 2 == 1) {
    // Integer weight exponent: smooth in u, integrate directly (even integrand).
    auto f = [&](double u) { return std::cos(t * u) * std::pow(1.0 - u * u, weight_power); };
    integral = 2.0 * quadrature::require_converged(quadrature::integrate(f, 0.0, 1.0, opt),
                                                   "omega_n interval form")
                         .value;
  } else {
    // Half-integer exponent is singular at u = 1; u = sin(theta) makes it smooth.
    auto f = [&](double th) { return std::cos(t * std::sin(th)) * std::pow(std::cos(th), n - 2); };
    integral = 2.0 * quadrature::require_converged(quadrature::integrate(f, 0.0, 0.5 * kPi, opt),
                                                   "omega_n interval form")
                         .value;
  }
  return norm * integral;
}

double omega_angular(int n, double argument) {
  const double norm = std::exp(-log_beta(0.5 * (n - 1), 0.5));
  quadrature::Options opt{1e-13, 1e-13, 4000};
  auto f = [&](double th) { return std::cos(argument * std::cos(th)) * std::pow(std::sin(th), n - 2); };
  const auto r = quadrature::require_converged(quadrature::integrate(f, 0.0, kPi, opt),
                                               "omega_n angular form");
  return norm * r.value;
}

double omega_series(int n, double t) {
  // Leading term Gamma(n/2)/sqrt(pi) * Gamma(1/2)/Gamma(n/2) = 1; successive terms
  // follow from the Gamma recurrences of Gamma(k + 1/2), Gamma(n/2 + k) and (2k)!.
  const long double t2 = static_cast<long double>(t) * t;
  const long double half_n = 0.5L * n;
  const auto s = sum_series(
      1.0L,
      [&](int k) {
        return -t2 * (k + 0.5L) / ((2.0L * k + 1.0L) * (2.0L * k + 2.0L) * (half_n + k));
      },
      kSeriesTermCap);
  if (!s.converged) return omega_bessel(n, t);
  return static_cast<double>(s.value);
}

}  // namespace

double log_gamma(double x) { return boost::math::lgamma(x); }

double gamma_fn(double x) { return boost::math::tgamma(x); }

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

double bessel_j(double nu, double x) {
  if (x < 0.0 || std::isnan(x)) throw InvalidArgument("bessel_j: x must be >= 0");
  if (nu < 0.0) throw InvalidArgument("bessel_j: order must be >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 2.0) {
    const double z = -0.25 * x * x;
    const auto s = hyp0f1_raw_series(nu + 1.0, z, kSeriesTermCap);
    return std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0)) * static_cast<double>(s.value);
  }
  return std::cyl_bessel_j(nu, x);
}

double bessel_k(double nu, double x) {
  if (!(x > 0.0)) throw InvalidArgument("bessel_k: x must be > 0");
  return std::cyl_bessel_k(std::abs(nu), x);
}

double scaled_bessel_k(double m, double x) {
  if (m <= 0.0) throw InvalidArgument("scaled_bessel_k: order must be > 0");
  if (x < 0.0) throw InvalidArgument("scaled_bessel_k: x must be >= 0");
  if (x == 0.0) return 1.0;
  const double k = std::cyl_bessel_k(m, x);
  if (k == 0.0) return 0.0;
  if (!std::isfinite(k)) return 1.0;
  return std::exp(m * std::log(x) + std::log(k) - (m - 1.0) * std::numbers::ln2 - log_gamma(m));
}

double hyp0f1(double gamma, double z) {
  if (is_nonpositive_integer(gamma)) {
    throw InvalidArgument("hyp0f1: gamma must not be a non-positive integer");
  }
  if (z == 0.0) return 1.0;
  if (z < -kHyp0f1SeriesBound) return hyp0f1_bessel(gamma, z);
  const auto s = hyp0f1_raw_series(gamma, z, kSeriesTermCap);
  if (!s.converged) return hyp0f1_bessel(gamma, z);
  return static_cast<double>(s.value);
}

double hyp0f1_series(double gamma, double z) {
  if (is_nonpositive_integer(gamma)) {
    throw InvalidArgument("hyp0f1_series: gamma must not be a non-positive integer");
  }
  const auto s = hyp0f1_raw_series(gamma, z, 20000);
  if (!s.converged) throw NumericalFailure("hyp0f1_series: series did not converge");
  return static_cast<double>(s.value);
}

std::string_view to_string(OmegaMethod m) {
  switch (m) {
    case OmegaMethod::bessel: return "bessel";
    case OmegaMethod::interval_integral: return "interval_integral";
    case OmegaMethod::angular_integral: return "angular_integral";
    case OmegaMethod::series: return "series";
    case OmegaMethod::hyp0f1: return "hyp0f1";
  }
  return "unknown";
}

OmegaMethod omega_method_from_string(std::string_view s) {
  for (auto m : {OmegaMethod::bessel, OmegaMethod::interval_integral, OmegaMethod::angular_integral,
                 OmegaMethod::series, OmegaMethod::hyp0f1}) {
    if (to_string(m) == s) return m;
  }
  throw InvalidArgument("unknown sphere characteristic-function method: " + std::string(s));
}

double omega_n(int n, double t_norm_sq, OmegaMethod method) {
  if (n < 1) throw InvalidArgument("omega_n: dimension must be >= 1");
  if (t_norm_sq < 0.0 || std::isnan(t_norm_sq)) {
    throw InvalidArgument("omega_n: squared norm must be >= 0");
  }
  if (t_norm_sq == 0.0) return 1.0;
  const double t = std::sqrt(t_norm_sq);
  if (n == 1) return std::cos(t);
  switch (method) {
    case OmegaMethod::bessel: return omega_bessel(n, t);
    case OmegaMethod::interval_integral: return omega_interval(n, t);
    case OmegaMethod::angular_integral: return omega_angular(n, t);
    case OmegaMethod::series: return omega_series(n, t);
    case OmegaMethod::hyp0f1: return hyp0f1(0.5 * n, -0.25 * t_norm_sq);
  }
  throw InvalidArgument("omega_n: unknown method");
}

double omega_n_angular_squared_argument(int n, double t_norm_sq) {
  if (n < 2) throw InvalidArgument("omega_n_angular_squared_argument: dimension must be >= 2");
  if (t_norm_sq < 0.0) throw InvalidArgument("omega_n_angular_squared_argument: negative argument");
  return omega_angular(n, t_norm_sq);
}

double tau(double x) {
  if (std::isnan(x)) throw InvalidArgument("tau: NaN argument");
  if (std::abs(x) > kTauMaxArgument) {
    throw RangeError("tau: |x| = " + std::to_string(std::abs(x)) + " exceeds " +
                     std::to_string(kTauMaxArgument) + "; the integrand overflows double range");
  }
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  quadrature::Options opt{0.0, 1e-15, 2000};
  const auto r = quadrature::integrate([](double u) { return std::exp(0.5 * u * u); }, 0.0, ax, opt);
  const double value = std::sqrt(2.0 / kPi) * r.value;
  return x < 0.0 ? -value : value;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double student_t_cdf(double x, double dof) {
  if (!(dof > 0.0)) throw InvalidArgument("student_t_cdf: degrees of freedom must be > 0");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::students_t_distribution<double>(dof), x);
}

}  // namespace skell

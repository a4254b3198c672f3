#include "skell/charfn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"
#include "skell/sampling.hpp"
#include "skell/special_functions.hpp"
#include "skell/verification.hpp"

namespace skell {
namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Integrand evaluations allowed per radial-route value; heavy radial tails
// (Student-t with dof near 1) exhaust it rather than running for minutes.
constexpr std::int64_t kGenericCfBudget = 3'000'000;

void check_t(const SkewEllipticalParams& params, const Vector& t) {
  if (t.size() != params.dim()) throw InvalidArgument("t has the wrong dimension");
  if (!t.allFinite()) throw InvalidArgument("t must be finite");
}

bool out_of_warranty(const SkewEllipticalParams& params, const Vector& t) {
  return t.norm() * params.scales().maxCoeff() > kCfWarrantyLimit;
}

cplx rotation(const SkewEllipticalParams& params, const Vector& t) {
  return std::polar(1.0, t.dot(params.location()));
}

// E exp(i x U) for U ~ Uniform[0, 1], i.e. (e^{ix} - 1)/(ix), with its series near 0.
cplx uniform_cf(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return {1.0 - x2 / 6.0, 0.5 * x - x * x2 / 24.0};
  }
  return {std::sin(x) / x, (1.0 - std::cos(x)) / x};
}

// Density of d on [0, 1] with d^2 ~ Beta(1/2, b), written in theta with d = sin(theta):
// 2 cos^{2b-1}(theta) / B(1/2, b) on [0, pi/2].
struct SplitWeight {
  double power;
  double norm;
  explicit SplitWeight(double b) : power(2.0 * b - 1.0), norm(2.0 * std::exp(-log_beta(0.5, b))) {}
  double operator()(double theta) const {
    return power == 0.0 ? norm : norm * std::pow(std::cos(theta), power);
  }
};

// Generic finaliser: flags out-of-warranty evaluation and converts quadrature
// failures there into NaN with an infinite error estimate.
template <typename F>
CfValue guarded(const SkewEllipticalParams& params, const Vector& t, std::string method, F compute) {
  const bool beyond = out_of_warranty(params, t);
  try {
    CfValue v = compute();
    v.method = std::move(method);
    if (beyond) v.err_estimate = kInf;
    return v;
  } catch (const QuadratureFailure&) {
    if (!beyond) throw;
    return {cplx(std::nan(""), std::nan("")), std::move(method), kInf};
  }
}

}  // namespace

std::string_view to_string(RadialReading r) {
  return r == RadialReading::corrected ? "corrected" : "printed";
}

RadialReading radial_reading_from_string(std::string_view s) {
  if (s == "corrected") return RadialReading::corrected;
  if (s == "printed" || s == "paper") return RadialReading::printed;
  throw InvalidArgument("unknown reading '" + std::string(s) + "' (expected corrected or printed)");
}

std::string_view to_string(SkewUniformForm f) {
  switch (f) {
    case SkewUniformForm::sphere_cf: return "sphere_cf";
    case SkewUniformForm::hypergeometric: return "hypergeometric";
    case SkewUniformForm::symmetric_claim: return "symmetric_claim";
  }
  return "unknown";
}

CfValue cf_skew_normal(const SkewEllipticalParams& params, const Vector& t) {
  check_t(params, t);
  const double quad = t.dot(params.dispersion() * t);
  const double s = t.dot(params.scaled_skewing());
  const cplx base = std::polar(std::exp(-0.5 * quad), t.dot(params.location()));
  const cplx v = base * cplx(1.0, tau(s));
  return {v, "skew_normal_closed_form", 1e-13 * std::max(1.0, std::abs(v))};
}

double elliptical_t_cf(double dof, double quad_form) {
  if (!(dof > 0.0)) throw InvalidArgument("degrees of freedom must be > 0");
  if (quad_form < 0.0) throw InvalidArgument("quadratic form must be >= 0");
  return scaled_bessel_k(0.5 * dof, std::sqrt(dof * quad_form));
}

CfValue cf_conditional_integral(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                const Vector& t) {
  check_t(params, t);
  const bool is_normal = gen.family() == DensityGenerator::Family::normal;
  const bool is_t = gen.family() == DensityGenerator::Family::student_t;
  if (!is_normal && !is_t) {
    throw InvalidArgument("conditional-integral route needs the normal or Student-t family");
  }
  const std::string method = "conditional_integral";
  if (t.isZero(0.0)) return {1.0, method, 0.0};
  return guarded(params, t, method, [&]() -> CfValue {
    const double s = t.dot(params.scaled_skewing());
    const double v = t.dot(params.residual_dispersion() * t);
    quadrature::Options opt{1e-13, 1e-12, 4000};
    quadrature::Result<cplx> r;
    if (is_normal) {
      const double phi = std::exp(-0.5 * v);
      auto f = [&](double u) -> cplx {
        return std::polar(2.0 * phi * std::exp(-0.5 * u * u) / std::sqrt(2.0 * kPi), s * u);
      };
      r = quadrature::integrate_half_line(f, 0.0, opt);
    } else {
      const double nu = gen.dof();
      const double m = 0.5 * (nu + 1.0);
      const double log_norm = log_gamma(m) - log_gamma(0.5 * nu) - 0.5 * std::log(nu * kPi);
      auto f = [&](double u) -> cplx {
        const double dens = std::exp(log_norm - m * std::log1p(u * u / nu));
        const double phi = scaled_bessel_k(m, std::sqrt((nu + u * u) * v));
        return std::polar(2.0 * phi * dens, s * u);
      };
      r = quadrature::integrate_half_line(f, 0.0, opt);
    }
    quadrature::require_converged(r, "conditional-integral characteristic function");
    return {rotation(params, t) * r.value, "", r.error};
  });
}

CfValue cf_generic(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& t,
                   RadialReading reading) {
  check_t(params, t);
  const int n = params.dim();
  gen.check_dimension(n);
  const std::string method = std::string("generic_") + std::string(to_string(reading));
  if (t.isZero(0.0)) return {1.0, method, 0.0};

  return guarded(params, t, method, [&]() -> CfValue {
    const RadialLaw law(gen, n);
    const double s = t.dot(params.scaled_skewing());
    double sphere_arg = 0.0;
    if (reading == RadialReading::corrected) {
      sphere_arg = t.dot(params.residual_dispersion() * t);
    } else {
      const Matrix m = params.skewing_complement().asDiagonal() * symmetric_sqrt(params.dispersion()) *
                       params.scales().asDiagonal();
      sphere_arg = (m * t).squaredNorm();
    }
    const bool printed = reading == RadialReading::printed;
    quadrature::Options inner_opt{1e-9, 0.0, 400};
    quadrature::Options outer_opt{1e-8, 0.0, 2000};

    // Printed reading in one dimension: d = 1, no sphere term.
    if (printed && n == 1) {
      auto f = [&](double r) -> cplx {
        const double h = law.density(r);
        return h == 0.0 ? cplx{} : h * uniform_cf(r * s);
      };
      const auto res = quadrature::integrate_half_line(f, 0.0, outer_opt);
      quadrature::require_converged(res, "radial characteristic function");
      return {rotation(params, t) * res.value, "", res.error};
    }

    const SplitWeight weight(printed ? 0.5 * (n - 1) : 0.5 * n);
    // The angular integral oscillates faster as r grows, where the radial weight is
    // small: its tolerance is loosened by h(r) (1 + r)^2 so the weighted error stays
    // integrable. worst_inner tracks the largest weighted residual actually reached.
    double worst_inner = 0.0;
    std::int64_t evaluations = 0;
    auto inner = [&](double r, double h) -> cplx {
      auto g = [&](double theta) -> cplx {
        if (++evaluations > kGenericCfBudget) {
          throw QuadratureFailure("radial characteristic function: evaluation budget exhausted", kInf);
        }
        const double d = std::sin(theta);
        const double c = std::cos(theta);
        const double sphere = omega_n(n, r * r * c * c * sphere_arg);
        const cplx skew = printed ? uniform_cf(r * d * s) : std::polar(1.0, r * d * s);
        return weight(theta) * sphere * skew;
      };
      const double damping = h * (1.0 + r) * (1.0 + r);
      // |inner| <= 1, so a tolerance of 1 or more is met by 0.
      if (inner_opt.abs_tol >= damping) {
        worst_inner = std::max(worst_inner, damping);
        return cplx{};
      }
      quadrature::Options opt = inner_opt;
      opt.abs_tol = std::max(inner_opt.abs_tol, inner_opt.abs_tol / damping);
      const auto res = quadrature::integrate(g, 0.0, 0.5 * kPi, opt);
      worst_inner = std::max(worst_inner, res.error * damping);
      return res.value;
    };
    auto outer = [&](double r) -> cplx {
      const double h = law.density(r);
      return h == 0.0 ? cplx{} : h * inner(r, h);
    };
    const auto res = quadrature::integrate_half_line(outer, 0.0, outer_opt);
    quadrature::require_converged(res, "radial characteristic function");
    if (worst_inner > 1e-7) throw QuadratureFailure("radial characteristic function (split integral)", worst_inner);
    return {rotation(params, t) * res.value, "", res.error + worst_inner};
  });
}

CfValue cf_skew_t(const SkewEllipticalParams& params, double dof, const Vector& t, PrefactorReading reading) {
  check_t(params, t);
  if (!(dof > 0.0)) throw InvalidArgument("degrees of freedom must be > 0");
  const std::string method =
      reading == PrefactorReading::corrected ? "skew_t_corrected" : "skew_t_printed";
  if (t.isZero(0.0)) return {1.0, method, 0.0};

  return guarded(params, t, method, [&]() -> CfValue {
    const double quad = t.dot(params.dispersion() * t);
    const double re = elliptical_t_cf(dof, quad);
    const double s = t.dot(params.scaled_skewing());
    const double v = t.dot(params.residual_dispersion() * t);
    double im = 0.0;
    double err = 1e-13;
    if (s != 0.0) {
      const double m = 0.5 * (dof + 1.0);
      const double a = std::sqrt(v);
      const double log_c = std::log(2.0) + 0.5 * dof * std::log(dof) - 0.5 * (dof - 1.0) * std::numbers::ln2 -
                           0.5 * std::log(kPi) - log_gamma(0.5 * dof);
      const double log_pre = reading == PrefactorReading::corrected ? m * std::log(a) : 0.5 * dof * std::log(v);
      auto f = [&](double u) -> double {
        const double w = dof + u * u;
        const double x = a * std::sqrt(w);
        const double k = bessel_k(m, x);
        if (k == 0.0) return 0.0;
        return std::sin(s * u) * std::exp(log_c + log_pre - 0.5 * m * std::log(w) + std::log(k));
      };
      quadrature::Options opt{1e-13, 1e-12, 4000};
      const auto res = quadrature::integrate_half_line(f, 0.0, opt);
      quadrature::require_converged(res, "skew-t sine integral");
      im = res.value;
      err += res.error;
    }
    return {rotation(params, t) * cplx(re, im), "", err};
  });
}

CfValue cf_skew_uniform(const Vector& skewing, const Vector& t, SkewUniformForm form) {
  const int n = static_cast<int>(skewing.size());
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (t.size() != n) throw InvalidArgument("t has the wrong dimension");
  if ((skewing.array().abs() >= 1.0).any()) throw InvalidArgument("skewing entries must lie in (-1, 1)");
  const std::string method = std::string("skew_uniform_") + std::string(to_string(form));

  if (form == SkewUniformForm::symmetric_claim) {
    if (!skewing.isZero(0.0)) throw InvalidArgument("the symmetric closed form applies only to delta = 0");
    return {hyp0f1(0.5 * n, -0.25 * t.squaredNorm()), method, 1e-12};
  }
  if (t.isZero(0.0)) return {1.0, method, 0.0};
  const double s = t.dot(skewing);
  const Vector complement = (1.0 - skewing.array().square()).sqrt().matrix();
  const double w = complement.cwiseProduct(t).squaredNorm();
  const double err_scale = t.norm() > kCfWarrantyLimit ? kInf : 0.0;
  if (n == 1) return {uniform_cf(s), method, 1e-14 + err_scale};

  const SplitWeight weight(0.5 * (n - 1));
  auto g = [&](double theta) -> cplx {
    const double d = std::sin(theta);
    const double c2 = std::cos(theta) * std::cos(theta);
    const double sphere = form == SkewUniformForm::sphere_cf ? omega_n(n, c2 * w)
                                                             : hyp0f1(0.5 * n, -0.25 * c2 * w);
    return weight(theta) * sphere * uniform_cf(d * s);
  };
  const auto res = quadrature::integrate(g, 0.0, 0.5 * kPi, {1e-13, 1e-13, 2000});
  quadrature::require_converged(res, "skew-uniform characteristic function");
  return {res.value, method, res.error + err_scale};
}

CfValue cf_monte_carlo(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& t,
                       std::int64_t count, const RngState& state, int threads) {
  check_t(params, t);
  const SampleMatrix x = sample_conditioning(params, gen, count, state, threads);
  const auto est = empirical_cf(x, t.transpose(), threads);
  return {est.front().value, "monte_carlo", 4.0 / std::sqrt(static_cast<double>(count))};
}

}  // namespace skell

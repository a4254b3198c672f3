#include "skell/density.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"
#include "skell/special_functions.hpp"

namespace skell {
namespace {

enum class ClosedForm { none, normal, student_t };

ClosedForm closed_form_of(const DensityGenerator& gen, double* dof) {
  switch (gen.family()) {
    case DensityGenerator::Family::normal: return ClosedForm::normal;
    case DensityGenerator::Family::student_t: *dof = gen.dof(); return ClosedForm::student_t;
    case DensityGenerator::Family::smsn:
      if (gen.mixing().kind() == MixingLaw::Kind::inverse_gamma) {
        *dof = gen.mixing().dof();
        return ClosedForm::student_t;
      }
      return ClosedForm::none;
    case DensityGenerator::Family::custom: return ClosedForm::none;
  }
  return ClosedForm::none;
}

double log_normal_cdf(double z) {
  if (z > -30.0) return std::log(normal_cdf(z));
  // Far lower tail: Mills-ratio expansion of Phi(z) = phi(z)/|z| (1 - 1/z^2 + 3/z^4 - ...).
  double term = 1.0, sum = 1.0;
  const double inv = 1.0 / (z * z);
  for (int k = 1; k < 8; ++k) {
    term *= -(2.0 * k - 1.0) * inv;
    sum += term;
  }
  return -0.5 * z * z - std::log(-z) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(sum);
}

}  // namespace

double conditional_cdf(const DensityGenerator& gen, int n, double q, double z) {
  if (std::isnan(z)) throw InvalidArgument("conditional_cdf: NaN argument");
  if (std::isinf(z)) return z > 0 ? 1.0 : 0.0;
  const auto g = conditional_generator(gen, n, q);
  auto f = [&](double u) { return g(u * u); };
  quadrature::Options opt{1e-14, 1e-13, 4000};
  const auto total = quadrature::integrate_half_line(f, 0.0, opt);
  quadrature::require_converged(total, "conditional CDF normaliser");
  const double az = std::abs(z);
  const auto tail = quadrature::integrate_half_line(f, az, opt);
  quadrature::require_converged(tail, "conditional CDF tail");
  const double lower = tail.value / (2.0 * total.value);
  return z >= 0.0 ? 1.0 - lower : lower;
}

SkewEllipticalDensity::SkewEllipticalDensity(SkewEllipticalParams params, DensityGenerator gen)
    : params_(std::move(params)), gen_(std::move(gen)), chol_(params_.dispersion()) {
  const int n = params_.dim();
  gen_.check_dimension(n);
  if (chol_.info() != Eigen::Success) throw InvalidArgument("dispersion matrix is not positive definite");
  scaled_shape_ = params_.shape().cwiseQuotient(params_.scales());
  const Matrix l = chol_.matrixL();
  const double log_det = 2.0 * l.diagonal().array().log().sum();
  log_c_det_ = std::log(normalizing_constant(gen_, n)) - 0.5 * log_det;
}

void SkewEllipticalDensity::check_point(const Vector& x) const {
  if (x.size() != params_.dim()) throw InvalidArgument("evaluation point has the wrong dimension");
  if (!x.allFinite()) throw InvalidArgument("evaluation point must be finite");
}

double SkewEllipticalDensity::mahalanobis_sq(const Vector& x) const {
  check_point(x);
  const Vector z = chol_.matrixL().solve(x - params_.location());
  return z.squaredNorm();
}

double SkewEllipticalDensity::skewing_argument(const Vector& x) const {
  check_point(x);
  return scaled_shape_.dot(x - params_.location());
}

double SkewEllipticalDensity::log_elliptical_pdf(const Vector& x) const {
  return log_c_det_ + gen_.log_value(params_.dim(), mahalanobis_sq(x));
}

double SkewEllipticalDensity::elliptical_pdf(const Vector& x) const { return std::exp(log_elliptical_pdf(x)); }

double SkewEllipticalDensity::skewing_factor(double q, double z) const {
  double dof = 0.0;
  switch (closed_form_of(gen_, &dof)) {
    case ClosedForm::normal: return normal_cdf(z);
    case ClosedForm::student_t: {
      const int n = params_.dim();
      return student_t_cdf(z * std::sqrt((dof + n) / (dof + q)), dof + n);
    }
    case ClosedForm::none: break;
  }
  return conditional_cdf(gen_, params_.dim(), q, z);
}

double SkewEllipticalDensity::log_skewing_factor(double q, double z) const {
  double dof = 0.0;
  if (closed_form_of(gen_, &dof) == ClosedForm::normal) return log_normal_cdf(z);
  const double f = skewing_factor(q, z);
  return f > 0.0 ? std::log(f) : -std::numeric_limits<double>::infinity();
}

double SkewEllipticalDensity::log_pdf(const Vector& x) const {
  const double q = mahalanobis_sq(x);
  const double z = skewing_argument(x);
  return std::numbers::ln2 + log_c_det_ + gen_.log_value(params_.dim(), q) + log_skewing_factor(q, z);
}

double SkewEllipticalDensity::pdf(const Vector& x) const {
  const double q = mahalanobis_sq(x);
  const double z = skewing_argument(x);
  return 2.0 * std::exp(log_c_det_) * gen_(params_.dim(), q) * skewing_factor(q, z);
}

double SkewEllipticalDensity::log_pdf_generic(const Vector& x) const {
  const double q = mahalanobis_sq(x);
  const double z = skewing_argument(x);
  const double f = conditional_cdf(gen_, params_.dim(), q, z);
  if (!(f > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::numbers::ln2 + log_c_det_ + gen_.log_value(params_.dim(), q) + std::log(f);
}

double SkewEllipticalDensity::pdf_generic(const Vector& x) const { return std::exp(log_pdf_generic(x)); }

double pdf(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& x) {
  return SkewEllipticalDensity(params, gen).pdf(x);
}

double log_pdf(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& x) {
  return SkewEllipticalDensity(params, gen).log_pdf(x);
}

}  // namespace skell

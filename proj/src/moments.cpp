#include "skell/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"
#include "skell/tensor_algebra.hpp"

namespace skell {
namespace {

const double kHalfNormalMean = std::sqrt(2.0 / std::numbers::pi);

void check_dim(int n) {
  if (n > kMaxMomentDim) {
    throw InvalidArgument("moment tensors are limited to dimension " + std::to_string(kMaxMomentDim));
  }
}

void check_symmetric(const Matrix& a, int n, const char* name) {
  if (a.rows() != n || a.cols() != n) throw InvalidArgument(std::string(name) + " has the wrong shape");
  if (!is_symmetric(a)) throw InvalidArgument(std::string(name) + " must be symmetric");
}

MomentSet assemble(const SkewEllipticalParams& params, const Vector& r) {
  const int n = params.dim();
  check_dim(n);
  const int order = static_cast<int>(r.size());
  const double c = kHalfNormalMean;
  const Vector& mu = params.location();
  const Vector& d = params.scaled_skewing();
  const Matrix& omega = params.dispersion();

  MomentSet m;
  m.ratios = r;
  m.max_order = order;
  m.m1 = mu + c * r[0] * d;
  if (order < 2) return m;
  m.m2 = mu * mu.transpose() + c * r[0] * (mu * d.transpose() + d * mu.transpose()) + r[1] * omega;
  if (order < 3) return m;
  const MomentTensors t = moment_tensors(mu, d, omega);
  const Matrix mc = mu;
  const Matrix mt = mu.transpose();
  m.m3 = kron(mc, mt, mc) + c * r[0] * t.a1 + r[1] * t.a2 + c * r[2] * t.a3;
  if (order < 4) return m;
  m.m4 = kron(mc, mt, mc, mt) + c * r[0] * t.b1 + r[1] * t.b2 + c * r[2] * t.b3 + r[3] * t.b4;
  return m;
}

}  // namespace

Vector radial_ratios(const DensityGenerator& gen, int n, int max_order) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (max_order < 1 || max_order > 4) throw InvalidArgument("moment order must be in 1..4");
  Vector r(max_order);
  if (gen.family() == DensityGenerator::Family::normal) {
    r.setOnes();
    return r;
  }
  const RadialLaw law(gen, n);
  for (int k = 1; k <= max_order; ++k) {
    try {
      r[k - 1] = gen.is_scale_mixture() ? gen.mixing_half_moment(k) : law.moment(k) / chi_moment(n + 1, k);
    } catch (const MomentNotFinite& e) {
      throw MomentNotFinite("radial moment of order " + std::to_string(k) + " does not exist: " + e.what());
    }
    if (!std::isfinite(r[k - 1])) {
      throw MomentNotFinite("radial moment of order " + std::to_string(k) + " does not exist");
    }
  }
  return r;
}

MomentSet sn_moments(const SkewEllipticalParams& params) {
  const int n = params.dim();
  check_dim(n);
  if (!params.location().isZero(0.0)) {
    throw InvalidArgument("sn_moments requires zero location; use se_moments for a shifted law");
  }
  const double c = kHalfNormalMean;
  const Vector& d = params.scaled_skewing();
  const MomentTensors t = moment_tensors(Vector::Zero(n), d, params.dispersion());
  MomentSet m;
  m.ratios = Vector::Ones(4);
  m.m1 = c * d;
  m.m2 = params.dispersion();
  m.m3 = c * t.a3;
  m.m4 = t.b4;
  return m;
}

MomentSet se_moments(const SkewEllipticalParams& params, const DensityGenerator& gen, int max_order) {
  gen.check_dimension(params.dim());
  return assemble(params, radial_ratios(gen, params.dim(), max_order));
}

Matrix se_fourth_moment(const SkewEllipticalParams& params, const Vector& ratios, const FourthMomentTerms& terms) {
  const int n = params.dim();
  check_dim(n);
  if (ratios.size() < 4) throw InvalidArgument("fourth moment needs four radial ratios");
  const double c = kHalfNormalMean;
  const Vector& mu = params.location();
  const MomentTensors t = moment_tensors(mu, params.scaled_skewing(), params.dispersion());
  Matrix m = Matrix::Zero(n * n, n * n);
  if (terms.location) m += kron(Matrix(mu), Matrix(mu.transpose()), Matrix(mu), Matrix(mu.transpose()));
  if (terms.b1) m += c * ratios[0] * t.b1;
  if (terms.b2) m += ratios[1] * t.b2;
  if (terms.b3) m += c * ratios[2] * t.b3;
  if (terms.b4) m += ratios[3] * t.b4;
  return m;
}

QuadraticFormMean qform_mean(const SkewEllipticalParams& params, const DensityGenerator& gen, const Matrix& a) {
  const int n = params.dim();
  check_symmetric(a, n, "A");
  const MomentSet m = se_moments(params, gen, 2);
  const Vector& mu = params.location();
  const Vector& d = params.scaled_skewing();
  const double trace = (a * m.m2).trace();
  const double expanded = mu.dot(a * mu) + 2.0 * kHalfNormalMean * m.ratios[0] * mu.dot(a * d) +
                          m.ratios[1] * (a * params.dispersion()).trace();
  return {trace, expanded};
}

QuadraticFormSecond qform_second(const MomentSet& m, const Matrix& a, const Matrix& b) {
  if (m.max_order < 4) throw InvalidArgument("quadratic-form second moments need the fourth moment");
  const int n = static_cast<int>(m.m1.size());
  check_symmetric(a, n, "A");
  check_symmetric(b, n, "B");
  const double ea = (a * m.m2).trace();
  const double eb = (b * m.m2).trace();
  const double second = (kron(a, a) * m.m4).trace();
  const double cross = (kron(a, b) * m.m4).trace();
  return {second, second - ea * ea, cross - ea * eb};
}

QuadraticFormSecond qform_second(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                 const Matrix& a, const Matrix& b) {
  return qform_second(se_moments(params, gen, 4), a, b);
}

double IdentityCheck::abs_error() const { return std::abs(computed - expected); }

std::vector<IdentityCheck> normal_identity_suite() {
  // U0 ~ N(0, 1); the conditional characteristic generator of the normal family
  // is s -> exp(-s/2) whatever the value of U0, with k-th derivative (-1/2)^k exp(-s/2).
  auto derivative = [](int k, double s) { return std::pow(-0.5, k) * std::exp(-0.5 * s); };
  auto density = [](double u) { return std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi); };
  const quadrature::Options opt{1e-15, 1e-15, 2000};
  // Every integrand below is even in u0, so E f(U0) = 2 * integral_0^inf f(u) phi(u) du.
  auto expect = [&](auto f, const char* what) {
    const auto r = quadrature::integrate_half_line([&](double u) { return 2.0 * f(u) * density(u); }, 0.0, opt);
    quadrature::require_converged(r, what);
    return r.value;
  };
  const double abs_u = expect([](double u) { return u; }, "E|U0|");
  const double d1 = expect([&](double) { return derivative(1, 0.0); }, "E phi'(0)");
  const double d1_abs = expect([&](double u) { return derivative(1, 0.0) * u; }, "E phi'(0)|U0|");
  const double d2 = expect([&](double) { return derivative(2, 0.0); }, "E phi''(0)");
  const double abs_u3 = expect([](double u) { return u * u * u; }, "E|U0|^3");

  const double pi = std::numbers::pi;
  return {
      {"E|U0|", abs_u, std::sqrt(2.0 / pi)},
      {"E phi'(0)", d1, -0.5},
      {"E phi'(0)|U0|", d1_abs, -std::sqrt(1.0 / (2.0 * pi))},
      {"E phi''(0)", d2, 0.25},
      {"E|U0|^3 + 4 E phi'(0)|U0|", abs_u3 + 4.0 * d1_abs, 0.0},
  };
}

}  // namespace skell

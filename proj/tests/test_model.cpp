#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skell/error.hpp"
#include "skell/model.hpp"
#include "skell/quadrature.hpp"

using namespace skell;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix random_correlation(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> z;
  Matrix a(n, n + 2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n + 2; ++j) a(i, j) = z(gen);
  Matrix s = a * a.transpose();
  const Vector d = s.diagonal().cwiseSqrt().cwiseInverse();
  return d.asDiagonal() * s * d.asDiagonal();
}

Vector random_skewing(int n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  Vector d(n);
  for (int i = 0; i < n; ++i) d[i] = u(gen);
  return d;
}

}  // namespace

TEST(Params, SymmetricCase) {
  Matrix omega(2, 2);
  omega << 4, 1, 1, 2;
  const auto p = SkewEllipticalParams::from_shape(Vector::Zero(2), omega, Vector::Zero(2));
  EXPECT_TRUE(p.skewing().isZero(0.0));
  EXPECT_TRUE(p.skewing_complement().isOnes(0.0));
  EXPECT_LT((p.latent_correlation() - p.correlation()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Params, ScalarSkewing) {
  const auto p = SkewEllipticalParams::from_shape(Vector::Zero(1), Matrix::Ones(1, 1), Vector::Ones(1));
  EXPECT_NEAR(p.skewing()[0], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Params, Invariants) {
  std::mt19937_64 gen(21);
  for (int n : {1, 2, 3, 5}) {
    const Matrix psi = random_correlation(n, gen);
    const Vector delta = random_skewing(n, gen);
    Vector scales(n);
    for (int i = 0; i < n; ++i) scales[i] = 0.5 + i;
    const auto p = SkewEllipticalParams::from_skewing(Vector::Zero(n), scales, psi, delta);
    EXPECT_LT((p.correlation().diagonal() - Vector::Ones(n)).cwiseAbs().maxCoeff(), 1e-12);
    const Matrix rebuilt = p.skewing_complement().asDiagonal() * p.latent_correlation() *
                               p.skewing_complement().asDiagonal() +
                           p.skewing() * p.skewing().transpose();
    EXPECT_LT((rebuilt - p.correlation()).cwiseAbs().maxCoeff(), 1e-12);
    const Matrix resid = p.dispersion() - p.scaled_skewing() * p.scaled_skewing().transpose();
    EXPECT_LT((resid - p.residual_dispersion()).cwiseAbs().maxCoeff(), 1e-12);
    const Vector s = p.scales().cwiseProduct(p.skewing_complement());
    const Matrix via_latent = s.asDiagonal() * p.latent_correlation() * s.asDiagonal();
    EXPECT_LT((resid - via_latent).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Params, RoundTrip) {
  std::mt19937_64 gen(22);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = std::array<int, 4>{1, 2, 3, 5}[rep % 4];
    const Matrix psi = random_correlation(n, gen);
    const Vector delta = random_skewing(n, gen);
    const ForwardMapResult f = forward_map(psi, delta);
    EXPECT_LT((f.correlation.diagonal() - Vector::Ones(n)).cwiseAbs().maxCoeff(), 1e-12);
    const auto p = SkewEllipticalParams::from_shape(Vector::Zero(n), f.correlation, f.shape);
    EXPECT_LT((p.skewing() - delta).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((p.latent_correlation() - psi).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ForwardMap, KnownCases) {
  const auto zero = forward_map(Matrix::Identity(2, 2), Vector::Zero(2));
  EXPECT_TRUE(zero.shape.isZero(0.0));
  EXPECT_EQ(zero.correlation, Matrix::Identity(2, 2));
  const auto one = forward_map(Matrix::Ones(1, 1), Vector::Constant(1, 1.0 / std::sqrt(2.0)));
  EXPECT_NEAR(one.shape[0], 1.0, 1e-14);
}

TEST(Params, Rejections) {
  Matrix bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(SkewEllipticalParams::from_shape(Vector::Zero(2), bad, Vector::Zero(2)), InvalidArgument);
  EXPECT_THROW(SkewEllipticalParams::from_skewing(Vector::Zero(1), Vector::Ones(1), Matrix::Ones(1, 1),
                                                  Vector::Constant(1, 1.0)),
               InvalidArgument);
}

TEST(Generator, NormalClosedForm) {
  const auto g = DensityGenerator::normal();
  for (int k = 1; k <= 4; ++k) {
    for (double u : {0.0, 0.7, 3.0}) {
      EXPECT_NEAR(g(k, u), std::pow(2 * kPi, -0.5 * k) * std::exp(-u / 2), 1e-16);
      EXPECT_NEAR(reduce_generator(g, k, u), g(k, u), 1e-16);
    }
  }
  EXPECT_NEAR(g(1, 0.0), 1.0 / std::sqrt(2 * kPi), 1e-16);
  EXPECT_DOUBLE_EQ(normalizing_constant(g, 3), 1.0);
  EXPECT_NEAR(normalizing_constant_quadrature(g, 1), 1.0, 1e-10);
}

TEST(Generator, StudentReductionByQuadrature) {
  const auto g = DensityGenerator::student_t(4.0);
  EXPECT_NEAR(reduce_generator(g, 2, 1.0), reduce_generator_quadrature(g, 2, 1.0), 1e-12);
  EXPECT_NEAR(normalizing_constant_quadrature(g, 2), 1.0, 1e-9);
}

TEST(Generator, Conditional) {
  const auto g = DensityGenerator::normal();
  const auto c0 = conditional_generator(g, 2, 0.0);
  const auto c5 = conditional_generator(g, 2, 5.0);
  EXPECT_NEAR(c0(1.3), c5(1.3), 1e-15);
  EXPECT_NEAR(c0(0.0), g(3, 0.0) / g(2, 0.0), 1e-15);

  // Student-t with q = 0: a t law with nu + n degrees of freedom, scale sqrt(nu / (nu + n)).
  const double nu = 5.0;
  const int n = 2;
  const auto t = DensityGenerator::student_t(nu);
  const auto ct = conditional_generator(t, n, 0.0);
  const double m = nu + n, s2 = nu / m;
  const auto tm = DensityGenerator::student_t(m);
  for (double u : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(ct(u * u) / ct(0.0), tm(1, u * u / s2) / tm(1, 0.0), 1e-12);
  }
}

TEST(Radial, Densities) {
  const auto g = DensityGenerator::normal();
  for (double r : {0.3, 1.0, 2.5}) EXPECT_NEAR(radial_density(g, 1, r), r * std::exp(-r * r / 2), 1e-15);
  EXPECT_DOUBLE_EQ(radial_density(g, 2, 0.0), 0.0);
  const auto t = DensityGenerator::student_t(3.0);
  const auto mass =
      quadrature::integrate_half_line([&](double r) { return radial_density(t, 2, r); }, 0.0, {1e-12, 0, 4000});
  EXPECT_NEAR(mass.value, 1.0, 1e-10);
}

TEST(Radial, Moments) {
  const auto g = DensityGenerator::normal();
  EXPECT_NEAR(radial_moment(g, 1, 2), 2.0, 1e-14);
  EXPECT_NEAR(radial_moment(g, 1, 1), std::sqrt(kPi / 2), 1e-14);
  const auto t = DensityGenerator::student_t(5.0);
  EXPECT_DOUBLE_EQ(radial_moment(t, 2, 0), 1.0);
  EXPECT_NEAR(radial_moment(t, 2, 2), 5.0, 1e-12);
  EXPECT_THROW(radial_moment(t, 2, 5), MomentNotFinite);
  EXPECT_THROW(radial_moment(DensityGenerator::student_t(3.0), 2, 3), MomentNotFinite);
}

TEST(Mixing, Laws) {
  const auto ig = MixingLaw::inverse_gamma(5.0);
  EXPECT_NEAR(ig.half_moment(2), 5.0 / 3.0, 1e-14);
  EXPECT_NEAR(ig.half_moment(1), std::sqrt(2.5) * std::tgamma(2.0) / std::tgamma(2.5), 1e-14);
  const auto d = MixingLaw::discrete({1.0, 4.0}, {1.0, 3.0});
  EXPECT_NEAR(d.half_moment(2), 0.25 + 0.75 * 4.0, 1e-15);
  EXPECT_THROW(MixingLaw::discrete({-1.0}, {1.0}), InvalidArgument);
}

TEST(Generator, CustomProfileIsNormalised) {
  // Gaussian profile with an arbitrary constant, given in dimension 3.
  const auto g = DensityGenerator::custom([](double u) { return 7.0 * std::exp(-u / 2); }, 3);
  EXPECT_NEAR(g(3, 0.4), std::pow(2 * kPi, -1.5) * std::exp(-0.2), 1e-10);
  EXPECT_NEAR(g(2, 0.4), std::pow(2 * kPi, -1.0) * std::exp(-0.2), 1e-9);
  EXPECT_NO_THROW(g.check_dimension(2));
  EXPECT_THROW(g.check_dimension(3), InvalidArgument);
  const RadialLaw law(g, 2);
  EXPECT_NEAR(law.moment(2), 3.0, 1e-8);
}

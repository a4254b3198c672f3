#include <gtest/gtest.h>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "skell/error.hpp"
#include "skell/sampling.hpp"
#include "skell/special_functions.hpp"
#include "skell/verification.hpp"

using namespace skell;

namespace {

constexpr double kPi = std::numbers::pi;

SkewEllipticalParams example_params(int n) {
  Matrix omega(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) omega(i, j) = (i == j) ? 1.0 + 0.5 * i : 0.3;
  Vector alpha(n);
  for (int i = 0; i < n; ++i) alpha[i] = (i % 2 == 0) ? 2.0 : -1.0;
  return SkewEllipticalParams::from_shape(Vector::Zero(n), omega, alpha);
}

std::vector<double> column(const SampleMatrix& m, Index j) {
  std::vector<double> v(m.rows());
  for (Index i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

// Mean and standard error of f over the draws.
template <typename F>
std::pair<double, double> mean_se(std::int64_t count, F&& f) {
  double s = 0, s2 = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double v = f(i);
    s += v;
    s2 += v * v;
  }
  const double m = s / count;
  return {m, std::sqrt((s2 / count - m * m) / count)};
}

}  // namespace

TEST(Variant, Names) {
  EXPECT_EQ(variant_from_string("rep_b_paper"), Variant::rep_b_printed);
  EXPECT_EQ(variant_from_string("rep_c_printed"), Variant::rep_c_printed);
  EXPECT_EQ(to_string(Variant::rep_a), "rep_a");
  EXPECT_THROW(variant_from_string("rep_z"), InvalidArgument);
}

TEST(Sphere, OneDimensional) {
  Rng rng(1);
  int plus = 0;
  const int count = 100000;
  for (int i = 0; i < count; ++i) {
    const double v = sample_unit_sphere(1, rng)[0];
    ASSERT_EQ(std::abs(v), 1.0);
    plus += v > 0;
  }
  EXPECT_LT(std::abs(plus - count / 2), 4 * std::sqrt(count / 4.0));
}

TEST(Sphere, FirstCoordinateBeta) {
  Rng rng(2);
  std::vector<double> d1sq(100000);
  for (auto& v : d1sq) {
    const Vector u = sample_unit_sphere(4, rng);
    EXPECT_NEAR(u.norm(), 1.0, 1e-15);
    v = u[0] * u[0];
  }
  const boost::math::beta_distribution<double> law(0.5, 1.5);
  EXPECT_TRUE(ks_test(d1sq, [&](double x) { return x <= 0 ? 0.0 : x >= 1 ? 1.0 : boost::math::cdf(law, x); }).pass);
}

TEST(Sphere, MeanNearZero) {
  Rng rng(3);
  const int n = 3, count = 1000000;
  Vector mean = Vector::Zero(n);
  for (int i = 0; i < count; ++i) mean += sample_unit_sphere(n, rng);
  mean /= count;
  EXPECT_LT(mean.norm(), 4.0 / std::sqrt(count) * std::sqrt(n));
}

TEST(Radial, Means) {
  const std::int64_t count = 200000;
  {
    const RadialLaw law(DensityGenerator::normal(), 1);
    Rng rng(4);
    const auto [m, se] = mean_se(count, [&](auto) { return sample_radial(law, rng); });
    EXPECT_LT(std::abs(m - std::sqrt(kPi / 2)), 4 * se);
  }
  {
    const RadialLaw law(DensityGenerator::normal(), 2);
    Rng rng(5);
    const auto [m, se] = mean_se(count, [&](auto) { const double r = sample_radial(law, rng); return r * r; });
    EXPECT_LT(std::abs(m - 3.0), 4 * se);
  }
  {
    const RadialLaw law(DensityGenerator::student_t(6.0), 2);
    Rng rng(6);
    const auto [m, se] = mean_se(count, [&](auto) { const double r = sample_radial(law, rng); return r * r; });
    EXPECT_LT(std::abs(m - 4.5), 4 * se);
  }
}

TEST(Radial, CustomTableMatchesNormal) {
  const auto g = DensityGenerator::custom([](double u) { return std::exp(-u / 2); }, 3);
  const RadialLaw law(g, 2);
  Rng rng(7);
  std::vector<double> r(100000);
  for (auto& v : r) v = sample_radial(law, rng);
  // chi_3 cdf
  EXPECT_TRUE(ks_test(r, [](double x) { return x <= 0 ? 0.0 : boost::math::gamma_p(1.5, x * x / 2); }).pass);
}

TEST(Conditioning, SymmetricNormalMarginals) {
  Matrix omega(2, 2);
  omega << 2.0, 0.5, 0.5, 1.0;
  const Vector mu = (Vector(2) << 1.0, -1.0).finished();
  const auto p = SkewEllipticalParams::from_shape(mu, omega, Vector::Zero(2));
  const auto x = sample_conditioning(p, DensityGenerator::normal(), 100000, {8, 0});
  for (int j = 0; j < 2; ++j) {
    const double m = mu[j], s = std::sqrt(omega(j, j));
    EXPECT_TRUE(ks_test(column(x, j), [&](double v) { return normal_cdf((v - m) / s); }).pass) << j;
  }
}

TEST(Conditioning, ScalarSkewNormalMean) {
  const auto p = SkewEllipticalParams::from_shape(Vector::Zero(1), Matrix::Ones(1, 1), Vector::Ones(1));
  const std::int64_t count = 1000000;
  const auto x = sample_conditioning(p, DensityGenerator::normal(), count, {9, 0});
  const auto [m, se] = mean_se(count, [&](auto i) { return x(i, 0); });
  EXPECT_LT(std::abs(m - std::sqrt(2 / kPi) / std::sqrt(2.0)), 4 * se);

  for (double a : {3.0, -3.0}) {
    const auto q = SkewEllipticalParams::from_shape(Vector::Zero(1), Matrix::Ones(1, 1), Vector::Constant(1, a));
    const auto y = sample_conditioning(q, DensityGenerator::normal(), 100000, {10, 0});
    const double ym = y.col(0).mean();
    const double m3 = (y.col(0).array() - ym).cube().mean();
    EXPECT_EQ(m3 > 0, a > 0);
  }
}

TEST(Conditioning, Deterministic) {
  const auto p = example_params(3);
  const auto g = DensityGenerator::student_t(5.0);
  const auto a = sample_conditioning(p, g, 70000, {11, 2}, 1);
  const auto b = sample_conditioning(p, g, 70000, {11, 2}, 4);
  EXPECT_EQ(a, b);
  const auto c = sample_conditioning(p, g, 70000, {11, 3}, 1);
  EXPECT_NE(a, c);
}

TEST(Representation, RepAMatchesConditioning) {
  const auto p = example_params(2);
  const auto g = DensityGenerator::normal();
  const std::int64_t count = 1000000;
  const auto ref = sample_conditioning(p, g, count, {12, 0});
  const auto rep = sample_representation(p, g, Variant::rep_a, count, {12, 1});
  for (int j = 0; j < 2; ++j) {
    for (int k = 1; k <= 4; ++k) {
      const auto [m1, s1] = mean_se(count, [&](auto i) { return std::pow(ref(i, j), k); });
      const auto [m2, s2] = mean_se(count, [&](auto i) { return std::pow(rep(i, j), k); });
      EXPECT_LT(std::abs(m1 - m2), 4 * std::hypot(s1, s2)) << "coord " << j << " order " << k;
    }
  }
}

TEST(Representation, CorrectedRadialPartsRecombine) {
  // Zero skewing and identity dispersion leave only the symmetric radial part,
  // whose square has mean n.
  const auto p = SkewEllipticalParams::from_shape(Vector::Zero(2), Matrix::Identity(2, 2), Vector::Zero(2));
  const std::int64_t count = 400000;
  const auto x = sample_representation(p, DensityGenerator::normal(), Variant::rep_c_corrected, count, {13, 0});
  const auto [m, se] = mean_se(count, [&](auto i) { return x.row(i).squaredNorm(); });
  EXPECT_LT(std::abs(m - 2.0), 4 * se);
}

TEST(Representation, PrintedVariantRuns) {
  const auto p = example_params(2);
  const auto x = sample_representation(p, DensityGenerator::normal(), Variant::rep_b_printed, 1000, {14, 0});
  EXPECT_EQ(x.rows(), 1000);
  EXPECT_TRUE(x.allFinite());
}

TEST(Smsn, DegenerateMixingIsSkewNormal) {
  const auto p = example_params(2);
  const std::int64_t count = 400000;
  const auto a = sample_smsn(p, MixingLaw::discrete({1.0}, {1.0}), count, {15, 0});
  const auto b = sample_conditioning(p, DensityGenerator::normal(), count, {15, 1});
  for (int j = 0; j < 2; ++j) {
    for (int k = 1; k <= 2; ++k) {
      const auto [m1, s1] = mean_se(count, [&](auto i) { return std::pow(a(i, j), k); });
      const auto [m2, s2] = mean_se(count, [&](auto i) { return std::pow(b(i, j), k); });
      EXPECT_LT(std::abs(m1 - m2), 4 * std::hypot(s1, s2));
    }
  }
}

TEST(Smsn, InverseGammaSecondMoment) {
  const auto p = example_params(2);
  const std::int64_t count = 1000000;
  const auto x = sample_smsn(p, MixingLaw::inverse_gamma(5.0), count, {16, 0});
  for (int j = 0; j < 2; ++j) {
    const auto [m, se] = mean_se(count, [&](auto i) { return x(i, j) * x(i, j); });
    EXPECT_LT(std::abs(m - p.dispersion()(j, j) * 5.0 / 3.0), 4 * se);
  }
}

TEST(SkewUniform, CoordinatesBounded) {
  const Vector d = (Vector(3) << 0.5, -0.2, 0.1).finished();
  const auto x = sample_skew_uniform(d, 10000, {17, 0});
  EXPECT_LE(x.cwiseAbs().maxCoeff(), 1.0 + 1e-12);
}

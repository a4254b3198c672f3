#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skell/error.hpp"
#include "skell/quadrature.hpp"
#include "skell/special_functions.hpp"

using namespace skell;

constexpr double kPi = std::numbers::pi;

TEST(BesselJ, KnownValues) {
  EXPECT_DOUBLE_EQ(bessel_j(0, 0), 1.0);
  EXPECT_NEAR(bessel_j(0.5, kPi / 2), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(bessel_j(0, 1), 0.765197686557966551449717526103, 1e-15);
}

TEST(BesselJ, HypergeometricRelation) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> nu_d(0.0, 5.0), x_d(0.0, 12.0);
  for (int i = 0; i < 50; ++i) {
    const double nu = nu_d(gen), x = x_d(gen);
    const double via_0f1 = std::pow(x / 2, nu) / std::tgamma(nu + 1) * hyp0f1(nu + 1, -x * x / 4);
    const double j = bessel_j(nu, x);
    EXPECT_NEAR(j, via_0f1, 1e-10 * std::max(1.0, std::abs(j))) << nu << " " << x;
  }
}

TEST(BesselK, KnownValuesAndSymmetry) {
  EXPECT_NEAR(bessel_k(0.5, 1.0), std::sqrt(kPi / 2) * std::exp(-1.0), 1e-15);
  EXPECT_NEAR(bessel_k(0.5, 1.0), 0.461068504447894, 1e-14);
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> nu_d(0.0, 0.5), x_d(0.1, 5.0);
  for (int i = 0; i < 20; ++i) {
    const double nu = nu_d(gen), x = x_d(gen);
    EXPECT_DOUBLE_EQ(bessel_k(nu, x), bessel_k(-nu, x));
  }
}

TEST(BesselK, IntegralRepresentation) {
  // K_nu(x) = integral_0^inf exp(-x cosh s) cosh(nu s) ds
  const double nu = 1.0, x = 2.0;
  const auto r = quadrature::integrate_half_line(
      [&](double s) { return s > 50 ? 0.0 : std::exp(-x * std::cosh(s)) * std::cosh(nu * s); }, 0.0,
      {1e-15, 1e-15, 2000});
  EXPECT_NEAR(bessel_k(nu, x), r.value, 1e-13);
}

TEST(ScaledBesselK, LimitsAndHalfOrder) {
  EXPECT_DOUBLE_EQ(scaled_bessel_k(1.5, 0.0), 1.0);
  // m = 1/2: x^{1/2} K_{1/2}(x) / (2^{-1/2} Gamma(1/2)) = exp(-x)
  EXPECT_NEAR(scaled_bessel_k(0.5, 2.0), std::exp(-2.0), 1e-14);
  EXPECT_NEAR(scaled_bessel_k(0.5, 800.0), 0.0, 1e-300);
}

TEST(Hyp0F1, Identities) {
  EXPECT_DOUBLE_EQ(hyp0f1(2.5, 0.0), 1.0);
  EXPECT_NEAR(hyp0f1(0.5, -kPi * kPi / 4), -1.0, 1e-14);
  EXPECT_NEAR(hyp0f1(1.5, -kPi * kPi / 4), 0.0, 1e-14);
  EXPECT_NEAR(hyp0f1(0.5, -100.0), std::cos(20.0), 1e-11);
  EXPECT_NEAR(hyp0f1(1.5, -2500.0 / 4), std::sin(50.0) / 50.0, 1e-12);
}

TEST(Hyp0F1, SeriesMatchesFallback) {
  for (double z : {-1.0, -10.0, -50.0, -150.0}) {
    EXPECT_NEAR(hyp0f1_series(2.0, z), hyp0f1(2.0, z), 1e-11) << z;
  }
}

TEST(OmegaN, AtZeroAndClosedForms) {
  for (auto m : {OmegaMethod::bessel, OmegaMethod::interval_integral, OmegaMethod::angular_integral,
                 OmegaMethod::series, OmegaMethod::hyp0f1}) {
    for (int n = 1; n <= 6; ++n) EXPECT_DOUBLE_EQ(omega_n(n, 0.0, m), 1.0);
    EXPECT_NEAR(omega_n(2, 1.0, m), bessel_j(0, 1.0), 1e-12);
    EXPECT_NEAR(omega_n(3, kPi * kPi, m), 0.0, 1e-12);
    EXPECT_NEAR(omega_n(1, 4.0, m), std::cos(2.0), 1e-15);
  }
}

TEST(OmegaN, FiveFormsAgree) {
  const OmegaMethod methods[] = {OmegaMethod::bessel, OmegaMethod::interval_integral, OmegaMethod::angular_integral,
                                 OmegaMethod::series, OmegaMethod::hyp0f1};
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    for (int k = 0; k <= 40; ++k) {
      const double t = 0.5 * k;
      double v[5];
      for (int i = 0; i < 5; ++i) v[i] = omega_n(n, t * t, methods[i]);
      for (int i = 0; i < 5; ++i) {
        EXPECT_LE(std::abs(v[i]), 1.0 + 1e-12);
        for (int j = i + 1; j < 5; ++j) worst = std::max(worst, std::abs(v[i] - v[j]));
      }
    }
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(OmegaN, MethodNames) {
  EXPECT_EQ(omega_method_from_string("series"), OmegaMethod::series);
  EXPECT_EQ(to_string(OmegaMethod::hyp0f1), "hyp0f1");
  EXPECT_THROW(omega_method_from_string("nope"), InvalidArgument);
}

TEST(OmegaN, SquaredArgumentVariantDiffers) {
  EXPECT_GT(std::abs(omega_n_angular_squared_argument(3, 4.0) - omega_n(3, 4.0)), 1e-3);
  EXPECT_NEAR(omega_n_angular_squared_argument(3, 1.0), omega_n(3, 1.0), 1e-12);
}

TEST(Tau, Values) {
  EXPECT_DOUBLE_EQ(tau(0.0), 0.0);
  EXPECT_NEAR(tau(1.0), 0.953438269251260839, 1e-14);
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> x_d(0.0, 6.0);
  for (int i = 0; i < 20; ++i) {
    const double x = x_d(gen);
    EXPECT_DOUBLE_EQ(tau(-x), -tau(x));
  }
  EXPECT_THROW(tau(40.0), RangeError);
}

TEST(Cdfs, NormalAndStudent) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(student_t_cdf(0.0, 3.0), 0.5, 1e-16);
  EXPECT_NEAR(student_t_cdf(1.0, 1.0), 0.75, 1e-15);
}

TEST(Gamma, LogBeta) {
  EXPECT_NEAR(log_beta(0.5, 0.5), std::log(kPi), 1e-14);
  EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(kPi), 1e-15);
}

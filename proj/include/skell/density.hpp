#pragma once

#include "skell/linalg.hpp"
#include "skell/model.hpp"

namespace skell {

/// F(z) = integral_{-inf}^z c(q) g_q(u^2) du for the conditional generator g_q of
/// an n-dimensional law, normalised numerically. Absolute error about 1e-12.
double conditional_cdf(const DensityGenerator& gen, int n, double q, double z);

/// Density 2 c_n |W|^{-1/2} g^{(n)}(q(x)) F_q(a' w^{-1} (x - mu)) with q the squared
/// Mahalanobis distance. Holds the Cholesky factor of the dispersion.
class SkewEllipticalDensity {
 public:
  SkewEllipticalDensity(SkewEllipticalParams params, DensityGenerator gen);

  const SkewEllipticalParams& params() const { return params_; }
  const DensityGenerator& generator() const { return gen_; }

  /// Closed-form skewing factor for normal and Student-t laws (and inverse-gamma
  /// mixtures), conditional-CDF quadrature otherwise.
  double pdf(const Vector& x) const;
  double log_pdf(const Vector& x) const;

  /// Always uses conditional-CDF quadrature for the skewing factor.
  double pdf_generic(const Vector& x) const;
  double log_pdf_generic(const Vector& x) const;

  /// Symmetric part c_n |W|^{-1/2} g^{(n)}(q(x)).
  double elliptical_pdf(const Vector& x) const;
  double log_elliptical_pdf(const Vector& x) const;

  /// (x - mu)' W^{-1} (x - mu) via a triangular solve.
  double mahalanobis_sq(const Vector& x) const;
  /// a' w^{-1} (x - mu).
  double skewing_argument(const Vector& x) const;

  /// Skewing factor F_q(z) by closed form where available.
  double skewing_factor(double q, double z) const;
  double log_skewing_factor(double q, double z) const;

 private:
  void check_point(const Vector& x) const;

  SkewEllipticalParams params_;
  DensityGenerator gen_;
  Eigen::LLT<Matrix> chol_;
  Vector scaled_shape_;  // w^{-1} a
  double log_c_det_;     // log c_n - log|W|/2
};

/// Convenience wrappers building a SkewEllipticalDensity.
double pdf(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& x);
double log_pdf(const SkewEllipticalParams& params, const DensityGenerator& gen, const Vector& x);

}  // namespace skell

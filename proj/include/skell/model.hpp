#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "skell/linalg.hpp"
#include "skell/rng.hpp"

namespace skell {

/// Location, dispersion and shape of a skew-elliptical law together with every
/// derived re-parameterisation. Immutable once constructed.
class SkewEllipticalParams {
 public:
  /// Builds from (location, dispersion, shape). The skewing vector is
  /// delta = R a / sqrt(1 + a' R a) with R the correlation form of the dispersion.
  /// Throws InvalidArgument for a non-PD dispersion or an inadmissible pair.
  static SkewEllipticalParams from_shape(Vector location, Matrix dispersion, Vector shape);

  /// Builds from location, per-coordinate scales, latent correlation and skewing
  /// vector, going through forward_map.
  static SkewEllipticalParams from_skewing(Vector location, const Vector& scales,
                                           const Matrix& latent_correlation, const Vector& skewing);

  int dim() const { return static_cast<int>(location_.size()); }
  const Vector& location() const { return location_; }
  const Matrix& dispersion() const { return dispersion_; }
  const Vector& shape() const { return shape_; }
  /// Square roots of the dispersion diagonal.
  const Vector& scales() const { return scales_; }
  /// Dispersion rescaled to unit diagonal.
  const Matrix& correlation() const { return correlation_; }
  /// Skewing vector, entries in (-1, 1).
  const Vector& skewing() const { return skewing_; }
  /// sqrt(1 - skewing^2) entrywise.
  const Vector& skewing_complement() const { return complement_; }
  /// Correlation matrix of the latent symmetric part.
  const Matrix& latent_correlation() const { return latent_correlation_; }
  const Matrix& latent_correlation_sqrt() const { return latent_sqrt_; }
  /// skewing / skewing_complement.
  const Vector& latent_shape() const { return latent_shape_; }
  /// scales .* skewing.
  const Vector& scaled_skewing() const { return scaled_skewing_; }
  /// dispersion - scaled_skewing scaled_skewing'; equals the rescaled latent correlation.
  const Matrix& residual_dispersion() const { return residual_; }

 private:
  SkewEllipticalParams() = default;
  void derive_from_correlation_and_skewing();

  Vector location_;
  Matrix dispersion_;
  Vector shape_;
  Vector scales_;
  Matrix correlation_;
  Vector skewing_;
  Vector complement_;
  Matrix latent_correlation_;
  Matrix latent_sqrt_;
  Vector latent_shape_;
  Vector scaled_skewing_;
  Matrix residual_;
};

struct ForwardMapResult {
  Matrix correlation;
  Vector shape;
};

/// (latent correlation, skewing) -> (correlation, shape):
///   correlation = D P D + d d',   shape = (1 + l' P^{-1} l)^{-1/2} D^{-1} P^{-1} l
/// with D = diag(sqrt(1 - d^2)) and l = D^{-1} d.
ForwardMapResult forward_map(const Matrix& latent_correlation, const Vector& skewing);

/// Law of the positive scale variable eta in X = mu + sqrt(eta) Z.
class MixingLaw {
 public:
  enum class Kind { inverse_gamma, discrete, custom };

  /// eta = nu / chi^2_nu, which turns the skew-normal into the skew-t.
  static MixingLaw inverse_gamma(double dof);
  static MixingLaw discrete(std::vector<double> points, std::vector<double> weights);
  /// Arbitrary sampler with user-declared moments half_moments[k-1] = E eta^{k/2}, k = 1..
  static MixingLaw custom(std::function<double(Rng&)> sampler, std::vector<double> half_moments);

  Kind kind() const { return kind_; }
  double dof() const { return dof_; }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  /// E eta^{k/2}. Throws MomentNotFinite when it does not exist or was not declared.
  double half_moment(int k) const;
  double sample(Rng& rng) const;

 private:
  Kind kind_ = Kind::discrete;
  double dof_ = 0.0;
  std::vector<double> points_;
  std::vector<double> weights_;
  std::function<double(Rng&)> sampler_;
  std::vector<double> half_moments_;
};

/// Density generator family g^{(k)}. Generators are normalised so that the
/// k-dimensional spherical density is exactly g^{(k)}(x'x).
class DensityGenerator {
 public:
  enum class Family { normal, student_t, smsn, custom };

  static DensityGenerator normal();
  static DensityGenerator student_t(double dof);
  static DensityGenerator smsn(MixingLaw mixing);
  /// User-supplied profile for dimension base_dim. It is rescaled on construction
  /// so that it integrates to one; lower dimensions come from the marginal
  /// reduction by quadrature.
  static DensityGenerator custom(std::function<double(double)> profile, int base_dim,
                                 std::string label = "custom");

  Family family() const { return family_; }
  /// Dimension of the supplied profile; 0 for the named families, which are
  /// closed under marginalisation and valid in every dimension.
  int base_dim() const { return base_dim_; }
  double dof() const { return dof_; }
  const MixingLaw& mixing() const { return *mixing_; }
  std::string name() const;

  /// True when the law is a normal scale mixture (normal, Student-t, SMSN).
  bool is_scale_mixture() const { return family_ != Family::custom; }

  /// g^{(k)}(u), u >= 0.
  double operator()(int k, double u) const;
  double log_value(int k, double u) const;

  /// E eta^{k/2} of the mixing variable; 1 for the normal family.
  double mixing_half_moment(int k) const;
  /// One draw of eta (1 for the normal family). Custom families throw.
  double sample_mixing(Rng& rng) const;

  /// Throws InvalidArgument if this generator cannot describe an n-dimensional
  /// skew-elliptical law (custom profiles must have base_dim == n + 1).
  void check_dimension(int n) const;

  /// Rescaling applied to a custom profile; 1 for named families.
  double profile_scale() const { return scale_; }

 private:
  double custom_value(int k, double u) const;

  Family family_ = Family::normal;
  int base_dim_ = 0;
  double dof_ = 0.0;
  std::shared_ptr<const MixingLaw> mixing_;
  std::shared_ptr<const std::function<double(double)>> profile_;
  double scale_ = 1.0;
  std::string label_;
};

/// g^{(k)}(u) by the closed form where the family has one.
double reduce_generator(const DensityGenerator& gen, int k, double u);
/// g^{(k)}(u) = 2 * integral_0^inf g^{(k+1)}(s^2 + u) ds by quadrature from dimension k + 1.
double reduce_generator_quadrature(const DensityGenerator& gen, int k, double u);

/// u -> g^{(n+1)}(u + q) / g^{(n)}(q): the one-dimensional generator of the
/// skewing coordinate given that the symmetric part has squared Mahalanobis norm q.
/// Throws NumericalFailure when g^{(n)}(q) underflows.
std::function<double(double)> conditional_generator(const DensityGenerator& gen, int n, double q);

/// c_k: the constant making c_k g^{(k)}(x'x) a k-dimensional density. Closed form
/// (exactly 1 by normalisation) for named families.
double normalizing_constant(const DensityGenerator& gen, int k);
/// Gamma(k/2) / (pi^{k/2} * integral_0^inf u^{k/2-1} g^{(k)}(u) du) by quadrature.
double normalizing_constant_quadrature(const DensityGenerator& gen, int k);

/// Law of the radial variable R0 of an n-dimensional skew-elliptical vector,
/// i.e. the norm of the (n+1)-dimensional spherical vector it is built from.
class RadialLaw {
 public:
  RadialLaw(DensityGenerator gen, int n);

  const DensityGenerator& generator() const { return gen_; }
  int dim() const { return n_; }

  /// h(r) = 2 pi^{(n+1)/2} / Gamma((n+1)/2) r^n g^{(n+1)}(r^2).
  double density(double r) const;
  /// E R0^k. Closed form for named families, quadrature for custom ones.
  /// Throws MomentNotFinite if the moment does not exist.
  double moment(int k) const;
  double moment_quadrature(int k) const;
  double sample(Rng& rng) const;

 private:
  struct InverseCdfTable;
  struct LazyTable;
  const InverseCdfTable& table() const;
  double sample_tabulated(Rng& rng) const;

  DensityGenerator gen_;
  int n_;
  // Built on first draw from a custom generator; shared by copies.
  std::shared_ptr<LazyTable> lazy_;
};

double radial_density(const DensityGenerator& gen, int n, double r);
double radial_moment(const DensityGenerator& gen, int n, int k);

/// E chi_m^k = 2^{k/2} Gamma((m + k)/2) / Gamma(m/2).
double chi_moment(int m, double k);

}  // namespace skell

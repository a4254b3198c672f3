#pragma once

#include <string>
#include <vector>

#include "skell/linalg.hpp"
#include "skell/model.hpp"

namespace skell {

/// Raw moments up to order four. m3 is n^2 x n with m3(i + n j, k) = E y_i y_j y_k
/// and m4 is n^2 x n^2 with m4(i + n j, k + n l) = E y_i y_j y_k y_l.
/// Blocks above max_order are left empty.
struct MomentSet {
  Vector m1;
  Matrix m2;
  Matrix m3;
  Matrix m4;
  Vector ratios;  // E R^k / E chi_{n+1}^k for k = 1..max_order
  int max_order = 4;

  Matrix covariance() const { return m2 - m1 * m1.transpose(); }
};

/// Largest n accepted by the moment routines (the fourth block is n^2 x n^2).
inline constexpr int kMaxMomentDim = 32;

/// Ratios E R^k / E chi_{n+1}^k, k = 1..max_order, of the radial variable of an
/// n-dimensional law. Throws MomentNotFinite naming the first k that does not exist.
Vector radial_ratios(const DensityGenerator& gen, int n, int max_order = 4);

/// Skew-normal moments at zero location. Throws InvalidArgument if the location
/// is not zero.
MomentSet sn_moments(const SkewEllipticalParams& params);

/// Moments of a general skew-elliptical law, weighted by the radial ratios.
MomentSet se_moments(const SkewEllipticalParams& params, const DensityGenerator& gen, int max_order = 4);

/// Which terms of the fourth-moment assembly to include; used to isolate a
/// single tensor block when comparing against simulation.
struct FourthMomentTerms {
  bool location = true;
  bool b1 = true;
  bool b2 = true;
  bool b3 = true;
  bool b4 = true;
};
Matrix se_fourth_moment(const SkewEllipticalParams& params, const Vector& ratios,
                        const FourthMomentTerms& terms = {});

struct QuadraticFormMean {
  double trace_form;     // tr(A M2)
  double expanded_form;  // mu'A mu + 2 c r1 mu'A d_w + r2 tr(A W)
};

/// E(Y'AY) by both routes. A must be symmetric.
QuadraticFormMean qform_mean(const SkewEllipticalParams& params, const DensityGenerator& gen, const Matrix& a);

struct QuadraticFormSecond {
  double second_moment;  // E(Y'AY)^2
  double var_a;          // Var(Y'AY)
  double cov_ab;         // Cov(Y'AY, Y'BY)
};

QuadraticFormSecond qform_second(const SkewEllipticalParams& params, const DensityGenerator& gen,
                                 const Matrix& a, const Matrix& b);
/// Same, from an already assembled moment set.
QuadraticFormSecond qform_second(const MomentSet& moments, const Matrix& a, const Matrix& b);

/// Identities linking the skewing coordinate U0 and the conditional characteristic
/// generator of the normal family, each computed by quadrature over U0.
struct IdentityCheck {
  std::string name;
  double computed;
  double expected;
  double abs_error() const;
};
std::vector<IdentityCheck> normal_identity_suite();

}  // namespace skell

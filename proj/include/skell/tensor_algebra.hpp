#pragma once

#include "skell/linalg.hpp"

namespace skell {

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Left-to-right Kronecker product of three or more factors.
template <typename... Rest>
Matrix kron(const Matrix& a, const Matrix& b, const Matrix& c, const Rest&... rest) {
  return kron(kron(a, b), c, rest...);
}

/// Column-stacking vectorisation of an m x n matrix.
Vector vec(const Matrix& a);

/// The mn x mn permutation K with K * vec(A) = vec(A') for every m x n A.
Matrix commutation_matrix(Index m, Index n);

/// Building blocks of the third and fourth moment tensors of a skew-elliptical
/// vector with location mu, scaled skewing vector delta_w and dispersion omega.
///
/// The A* tensors are n^2 x n and the B* tensors n^2 x n^2. A1/B1 collect the
/// terms linear in delta_w, A2/B2 the terms in omega that pair with mu, A3/B3
/// the cubic skewing terms and B4 the Gaussian fourth moment.
struct MomentTensors {
  Matrix a1;
  Matrix a2;
  Matrix a3;
  Matrix b1;
  Matrix b2;
  Matrix b3;
  Matrix b4;
};

/// Assembles all seven tensors. The identity factor inside A3 and B3 is I_n.
/// Throws InvalidArgument on inconsistent shapes or a non-symmetric omega.
MomentTensors moment_tensors(const Vector& mu, const Vector& delta_w, const Matrix& omega);

}  // namespace skell

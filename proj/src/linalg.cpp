#include "skell/linalg.hpp"

#include <cmath>

#include "skell/error.hpp"

namespace skell {

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool is_positive_definite(const Matrix& a) {
  if (a.rows() == 0 || !is_symmetric(a)) return false;
  Eigen::LLT<Matrix> llt(a);
  return llt.info() == Eigen::Success;
}

Matrix symmetric_sqrt(const Matrix& a) {
  if (!is_symmetric(a)) throw InvalidArgument("symmetric_sqrt: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
    throw InvalidArgument("symmetric_sqrt: matrix is not positive definite");
  }
  const Vector root = eig.eigenvalues().cwiseSqrt();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();
}

}  // namespace skell

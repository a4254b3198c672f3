#pragma once

#include <Eigen/Dense>

namespace skell {

// Dense column-major storage throughout; vec() stacks columns left to right.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
// Draws are stored one per row.
using SampleMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// True if `a` is square and symmetric to within `tol` relative to its largest entry.
bool is_symmetric(const Matrix& a, double tol = 1e-12);

/// True if `a` is symmetric positive definite (Cholesky succeeds).
bool is_positive_definite(const Matrix& a);

/// Unique symmetric positive definite square root via eigendecomposition.
/// Throws InvalidArgument if `a` is not symmetric positive definite.
Matrix symmetric_sqrt(const Matrix& a);

}  // namespace skell

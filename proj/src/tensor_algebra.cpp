#include "skell/tensor_algebra.hpp"

#include <string>

#include "skell/error.hpp"

namespace skell {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& a) { return a.reshaped(); }

Matrix commutation_matrix(Index m, Index n) {
  if (m < 1 || n < 1) throw InvalidArgument("commutation_matrix: dimensions must be >= 1");
  // vec(A)[i + m*j] = A(i, j) and vec(A')[j + n*i] = A(i, j).
  Matrix k = Matrix::Zero(m * n, m * n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) k(j + n * i, i + m * j) = 1.0;
  }
  return k;
}

MomentTensors moment_tensors(const Vector& mu, const Vector& delta_w, const Matrix& omega) {
  const Index n = omega.rows();
  if (omega.cols() != n || mu.size() != n || delta_w.size() != n) {
    throw InvalidArgument("moment_tensors: shape mismatch (mu " + std::to_string(mu.size()) +
                          ", delta_w " + std::to_string(delta_w.size()) + ", omega " +
                          std::to_string(omega.rows()) + "x" + std::to_string(omega.cols()) + ")");
  }
  if (!is_symmetric(omega)) throw InvalidArgument("moment_tensors: omega is not symmetric");

  const Matrix m = mu;
  const Matrix mt = mu.transpose();
  const Matrix d = delta_w;
  const Matrix dt = delta_w.transpose();
  const Matrix vo = vec(omega);
  const Matrix vot = vo.transpose();
  const Matrix eye = Matrix::Identity(n, n);
  const Matrix eye_d = kron(eye, d);             // I ⊗ δ_w, n² x n
  const Matrix eye_dt = kron(eye, dt);           // I ⊗ δ_w', n x n²
  const Matrix eye_d_omega = eye_d * omega;      // (I ⊗ δ_w) Ω
  const Matrix omega_eye_dt = omega * eye_dt;    // Ω (I ⊗ δ_w')

  MomentTensors t;
  t.a1 = kron(d, mt, m) + kron(m, dt, m) + kron(m, mt, d);
  t.a2 = kron(omega, m) + kron(m, omega) + kron(vo, mt);
  t.a3 = kron(d, omega) + vo * dt + eye_d_omega - eye_d * kron(d, dt);

  t.b1 = kron(d, mt, m, mt) + kron(m, dt, m, mt) + kron(m, mt, d, mt) + kron(m, mt, m, dt);
  t.b2 = kron(omega, m, mt) + kron(m, omega, mt) + kron(vo, mt, mt) + kron(mt, omega, m) +
         kron(m, m, vot) + kron(m, mt, omega);
  t.b3 = kron(d, omega, mt) + kron(vo, dt, mt) + kron(eye_d_omega, mt) + kron(dt, omega, m) +
         kron(d, vot, m) + kron(omega_eye_dt, m) + kron(mt, d, omega) + kron(mt, Matrix(vo * dt)) +
         kron(mt, eye_d_omega) + kron(m, dt, omega) + kron(m, d, vot) + kron(m, omega_eye_dt) -
         kron(d, dt, d, mt) - kron(dt, d, dt, m) - kron(mt, d, dt, d) - kron(m, dt, d, dt);

  const Matrix oo = kron(omega, omega);
  t.b4 = (Matrix::Identity(n * n, n * n) + commutation_matrix(n, n)) * oo + vo * vot;
  return t;
}

}  // namespace skell

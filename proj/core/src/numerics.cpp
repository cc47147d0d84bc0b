// SPDX-License-Identifier: Apache-2.0
#include "swmimo/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swmimo {

namespace {

void require_hermitian(const ComplexMatrix& a, const char* who) {
  const double norm = a.norm();
  if ((a - a.adjoint()).norm() > 1e-12 * std::max(norm, 1e-300))
    throw std::invalid_argument(std::string(who) + ": input is not Hermitian");
}

}  // namespace

HermitianFactor hermitian_eigen(const ComplexMatrix& a) {
  require_hermitian(a, "hermitian_eigen");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigen: eigensolver did not converge");
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = a.rows();
  HermitianFactor f;
  f.eigenvalues = solver.eigenvalues().reverse();
  f.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    f.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return f;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a) {
  HermitianFactor f = hermitian_eigen(a);
  const double scale = f.eigenvalues.size() ? std::abs(f.eigenvalues(0)) : 0.0;
  RealVector lam = f.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -1e-10 * scale)
      throw std::runtime_error("hermitian_sqrt: matrix is not PSD (eigenvalue " +
                               std::to_string(lam(i)) + ")");
    lam(i) = std::sqrt(std::max(lam(i), 0.0));
  }
  return f.eigenvectors * lam.asDiagonal() * f.eigenvectors.adjoint();
}

ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& a) {
  HermitianFactor f = hermitian_eigen(a);
  const double scale = f.eigenvalues.size() ? std::abs(f.eigenvalues(0)) : 0.0;
  RealVector lam = f.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= 1e-14 * scale)
      throw std::runtime_error("hermitian_inv_sqrt: matrix is singular or not PD (eigenvalue " +
                               std::to_string(lam(i)) + ")");
    lam(i) = 1.0 / std::sqrt(lam(i));
  }
  return f.eigenvectors * lam.asDiagonal() * f.eigenvectors.adjoint();
}

ComplexMatrix cholesky_upper(const ComplexMatrix& a) {
  require_hermitian(a, "cholesky_upper");
  const Eigen::Index n = a.rows();
  // Row-by-row factorization of A = U^H U keeps pivot reporting explicit.
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex diag = a(i, i);
    for (Eigen::Index k = 0; k < i; ++k) diag -= std::conj(u(k, i)) * u(k, i);
    const double d = diag.real();
    if (d <= 0.0)
      throw std::runtime_error("cholesky_upper: non-positive pivot at index " +
                               std::to_string(i));
    u(i, i) = std::sqrt(d);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Complex s = a(i, j);
      for (Eigen::Index k = 0; k < i; ++k) s -= std::conj(u(k, i)) * u(k, j);
      u(i, j) = s / u(i, i).real();
    }
  }
  return u;
}

}  // namespace swmimo

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace swmimo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
struct HermitianFactor {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // unitary columns, matching order
};

HermitianFactor hermitian_eigen(const ComplexMatrix& a);

/// Unique PSD square root S with S*S^H = A. Eigenvalues in
/// [-1e-10*||A||, 0) are clamped to zero; anything lower is an error.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& a);

/// W with W*A*W^H = I for Hermitian positive definite A.
ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& a);

/// Upper-triangular U with U^H*U = A and real positive diagonal.
ComplexMatrix cholesky_upper(const ComplexMatrix& a);

}  // namespace swmimo

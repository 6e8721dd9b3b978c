#pragma once

#include <Eigen/Dense>

namespace adgt {

// Eigenvalues of a symmetric matrix, ascending.  Backed by Eigen's
// SelfAdjointEigenSolver (Householder tridiagonalization + implicit QR);
// throws std::runtime_error if the iteration fails to converge.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

// Spectral norm (largest absolute eigenvalue) of a symmetric matrix.
double symmetric_spectral_norm(const Eigen::MatrixXd& m);

}  // namespace adgt

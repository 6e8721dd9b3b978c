#include "adgt/spectral.hpp"

#include <stdexcept>

namespace adgt {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver did not converge");
  return solver.eigenvalues();
}

double symmetric_spectral_norm(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd ev = symmetric_eigenvalues(m);
  return ev.cwiseAbs().maxCoeff();
}

}  // namespace adgt

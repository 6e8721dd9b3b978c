#include "adgt/mixing.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "adgt/spectral.hpp"

namespace adgt {

MixingMatrix metropolis_weights(const Topology& topo) {
  const int n = topo.n;
  if (n < 2) throw std::invalid_argument("metropolis weights require n >= 2");
  const std::vector<int> deg = topo.degrees();

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : topo.edges) {
    const double v = 1.0 / (1.0 + std::max(deg[static_cast<std::size_t>(i)],
                                           deg[static_cast<std::size_t>(j)]));
    w(i, j) = v;
    w(j, i) = v;
  }
  // Row sums off the diagonal stay below 1, so the diagonal is nonnegative.
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();

  MixingMatrix mix;
  mix.w = std::move(w);
  mix.lambda = spectral_gap(mix.w);
  if (!(mix.lambda < 1.0 - 1e-12))
    throw std::runtime_error("mixing matrix does not contract; topology disconnected?");
  return mix;
}

double spectral_gap(const Eigen::MatrixXd& w) {
  const auto n = w.rows();
  const Eigen::MatrixXd deviation =
      w - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  return symmetric_spectral_norm(deviation);
}

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_full(m(i, j));
    }
    out << '\n';
  }
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix csv: " + path);
  write_matrix_csv(out, m);
}

}  // namespace adgt

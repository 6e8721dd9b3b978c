#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "adgt/topology.hpp"

namespace adgt {

// Symmetric doubly stochastic weight matrix over a connected topology,
// together with lambda = ||W - (1/n) 1 1^T||_2, the contraction factor of
// the consensus step.  lambda < 1 exactly when the graph is connected.
struct MixingMatrix {
  Eigen::MatrixXd w;
  double lambda = 0.0;

  int n() const { return static_cast<int>(w.rows()); }
};

// Metropolis-Hastings weights: w_ij = 1 / (1 + max(deg_i, deg_j)) on edges,
// w_ii = 1 - sum_j w_ij, zero elsewhere.  Throws if the result does not
// contract (disconnected input).
MixingMatrix metropolis_weights(const Topology& topo);

// ||W - (1/n) 1 1^T||_2 for a symmetric stochastic W.
double spectral_gap(const Eigen::MatrixXd& w);

// Dense CSV, one row per line, 17 significant digits (doubles round-trip).
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

// Formats a double with enough digits to parse back bit-identically.
std::string format_full(double value);

}  // namespace adgt

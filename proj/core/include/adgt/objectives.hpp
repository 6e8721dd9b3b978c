#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace adgt {

enum class ObjectiveKind { Quadratic, Logistic, Ridge };

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& name);

// f(x) = 1/2 x' diag(a) x + b' x with a > 0 elementwise.
struct QuadraticObjective {
  Eigen::VectorXd diag;    // a
  Eigen::VectorXd linear;  // b
};

// f(x) = sum_j log(1 + exp(-labels_j * features_j . x)) + (rho/2) ||x||^2
// with labels in {-1, +1}.
struct LogisticObjective {
  Eigen::MatrixXd features;  // one sample per row
  Eigen::VectorXd labels;
  double rho = 0.0;
};

// f(x) = ||a x - b||^2 + rho ||x||^2
struct RidgeObjective {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  double rho = 0.0;
};

using LocalObjective = std::variant<QuadraticObjective, LogisticObjective, RidgeObjective>;

ObjectiveKind kind_of(const LocalObjective& obj);
int dimension(const LocalObjective& obj);

// Throws std::invalid_argument on inconsistent shapes, nonpositive quadratic
// diagonals, labels outside {-1,+1}, or negative regularizers.
void validate(const LocalObjective& obj);

double value_local(const LocalObjective& obj, const Eigen::VectorXd& x);

// Analytic gradients.  Quadratic: diag(a) x + b.  Logistic:
// sum_j -labels_j sigma(-labels_j features_j.x) features_j + rho x with a
// numerically stable sigmoid.  Ridge: 2 a'(a x - b) + 2 rho x.
Eigen::VectorXd grad_local(const LocalObjective& obj, const Eigen::VectorXd& x);

// Lipschitz constant of grad_local.  Quadratic: max diagonal.  Logistic:
// ||M' M||_2 / 4 + rho.  Ridge: 2 ||A' A||_2 + 2 rho.
double smoothness_constant(const LocalObjective& obj);

// Strong convexity modulus (0 when only convex).  Quadratic: min diagonal.
// Logistic: rho.  Ridge: 2 rho.
double strong_convexity_constant(const LocalObjective& obj);

// n private costs of common dimension; the global objective is their sum.
struct ObjectiveEnsemble {
  std::vector<LocalObjective> locals;

  int n() const { return static_cast<int>(locals.size()); }
  int dim() const;

  double smoothness() const;         // max over agents
  double strong_convexity() const;   // min over agents

  double sum_value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sum_gradient(const Eigen::VectorXd& x) const;
};

void validate(const ObjectiveEnsemble& ens);

// Heterogeneous diagonal quadratics: agent i with difficulty tau draws its
// first p/2 diagonal entries uniformly from {1, 10^-1, ..., 10^-tau}, the
// last p/2 from {1, 10^1, ..., 10^tau}, and its linear term from [0,1]^p.
// Each agent uses RNG stream i of the given seed, so the ensemble is
// independent of construction order.  tau entries must be nonnegative
// integers; p must be even.
ObjectiveEnsemble make_quadratic_ensemble(int n, int p, const std::vector<double>& tau_assignment,
                                          std::uint64_t seed);

// Minimizer of the ensemble sum.  Quadratic: (sum diag) x = -(sum b) solved
// elementwise.  Ridge: normal equations via LDLT.  Logistic: centralized
// adaptive gradient descent until ||sum grad|| <= tol (default 1e-12), at
// most 10^6 iterations; throws std::runtime_error if the tolerance is not
// reached.
Eigen::VectorXd reference_minimizer(const ObjectiveEnsemble& ens, double tol = 1e-12);

// Self-describing serialization (kind, dimensions, dense parameter arrays).
nlohmann::json ensemble_to_json(const ObjectiveEnsemble& ens);
ObjectiveEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace adgt

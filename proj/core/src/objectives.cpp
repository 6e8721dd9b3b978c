#include "adgt/objectives.hpp"

#include <cmath>
#include <stdexcept>

#include "adgt/engine.hpp"
#include "adgt/rng.hpp"
#include "adgt/spectral.hpp"

namespace adgt {

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Quadratic: return "quadratic";
    case ObjectiveKind::Logistic: return "logistic";
    case ObjectiveKind::Ridge: return "ridge";
  }
  throw std::logic_error("unknown ObjectiveKind");
}

ObjectiveKind objective_kind_from_string(const std::string& name) {
  if (name == "quadratic") return ObjectiveKind::Quadratic;
  if (name == "logistic") return ObjectiveKind::Logistic;
  if (name == "ridge") return ObjectiveKind::Ridge;
  throw std::invalid_argument("unknown objective kind: " + name);
}

ObjectiveKind kind_of(const LocalObjective& obj) {
  if (std::holds_alternative<QuadraticObjective>(obj)) return ObjectiveKind::Quadratic;
  if (std::holds_alternative<LogisticObjective>(obj)) return ObjectiveKind::Logistic;
  return ObjectiveKind::Ridge;
}

int dimension(const LocalObjective& obj) {
  return std::visit(
      [](const auto& o) -> int {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>)
          return static_cast<int>(o.diag.size());
        else if constexpr (std::is_same_v<T, LogisticObjective>)
          return static_cast<int>(o.features.cols());
        else
          return static_cast<int>(o.a.cols());
      },
      obj);
}

void validate(const LocalObjective& obj) {
  std::visit(
      [](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>) {
          if (o.diag.size() == 0 || o.diag.size() != o.linear.size())
            throw std::invalid_argument("quadratic objective: shape mismatch");
          if (!(o.diag.minCoeff() > 0.0))
            throw std::invalid_argument("quadratic objective: diagonal must be positive");
          if (!o.diag.allFinite() || !o.linear.allFinite())
            throw std::invalid_argument("quadratic objective: non-finite parameters");
        } else if constexpr (std::is_same_v<T, LogisticObjective>) {
          if (o.features.rows() == 0 || o.features.cols() == 0 ||
              o.features.rows() != o.labels.size())
            throw std::invalid_argument("logistic objective: shape mismatch");
          if (!o.features.allFinite())
            throw std::invalid_argument("logistic objective: non-finite features");
          for (Eigen::Index j = 0; j < o.labels.size(); ++j)
            if (o.labels[j] != 1.0 && o.labels[j] != -1.0)
              throw std::invalid_argument("logistic objective: labels must be -1 or +1");
          if (!(o.rho >= 0.0))
            throw std::invalid_argument("logistic objective: rho must be >= 0");
        } else {
          if (o.a.rows() == 0 || o.a.cols() == 0 || o.a.rows() != o.b.size())
            throw std::invalid_argument("ridge objective: shape mismatch");
          if (!o.a.allFinite() || !o.b.allFinite())
            throw std::invalid_argument("ridge objective: non-finite parameters");
          if (!(o.rho >= 0.0))
            throw std::invalid_argument("ridge objective: rho must be >= 0");
        }
      },
      obj);
}

namespace {

// log(1 + exp(z)) without overflow for any double z.
double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

// sigma(-t) = 1 / (1 + exp(t)), evaluated without overflow.
double sigmoid_neg(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

double value_local(const LocalObjective& obj, const Eigen::VectorXd& x) {
  return std::visit(
      [&x](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>) {
          return 0.5 * x.dot(o.diag.cwiseProduct(x)) + o.linear.dot(x);
        } else if constexpr (std::is_same_v<T, LogisticObjective>) {
          const Eigen::ArrayXd margins = o.labels.array() * (o.features * x).array();
          double total = 0.0;
          for (Eigen::Index j = 0; j < margins.size(); ++j) total += softplus(-margins[j]);
          return total + 0.5 * o.rho * x.squaredNorm();
        } else {
          return (o.a * x - o.b).squaredNorm() + o.rho * x.squaredNorm();
        }
      },
      obj);
}

Eigen::VectorXd grad_local(const LocalObjective& obj, const Eigen::VectorXd& x) {
  return std::visit(
      [&x](const auto& o) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>) {
          return o.diag.cwiseProduct(x) + o.linear;
        } else if constexpr (std::is_same_v<T, LogisticObjective>) {
          const Eigen::ArrayXd margins = o.labels.array() * (o.features * x).array();
          Eigen::VectorXd weights(margins.size());
          for (Eigen::Index j = 0; j < margins.size(); ++j)
            weights[j] = -o.labels[j] * sigmoid_neg(margins[j]);
          return o.features.transpose() * weights + o.rho * x;
        } else {
          return 2.0 * (o.a.transpose() * (o.a * x - o.b)) + 2.0 * o.rho * x;
        }
      },
      obj);
}

double smoothness_constant(const LocalObjective& obj) {
  return std::visit(
      [](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>) {
          return o.diag.maxCoeff();
        } else if constexpr (std::is_same_v<T, LogisticObjective>) {
          const Eigen::MatrixXd gram = o.features.transpose() * o.features;
          return 0.25 * symmetric_spectral_norm(gram) + o.rho;
        } else {
          const Eigen::MatrixXd gram = o.a.transpose() * o.a;
          return 2.0 * symmetric_spectral_norm(gram) + 2.0 * o.rho;
        }
      },
      obj);
}

double strong_convexity_constant(const LocalObjective& obj) {
  return std::visit(
      [](const auto& o) -> double {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, QuadraticObjective>)
          return o.diag.minCoeff();
        else if constexpr (std::is_same_v<T, LogisticObjective>)
          return o.rho;
        else
          return 2.0 * o.rho;
      },
      obj);
}

int ObjectiveEnsemble::dim() const {
  if (locals.empty()) throw std::invalid_argument("ensemble is empty");
  return dimension(locals.front());
}

double ObjectiveEnsemble::smoothness() const {
  if (locals.empty()) throw std::invalid_argument("ensemble is empty");
  double worst = 0.0;
  for (const auto& obj : locals) worst = std::max(worst, smoothness_constant(obj));
  return worst;
}

double ObjectiveEnsemble::strong_convexity() const {
  if (locals.empty()) throw std::invalid_argument("ensemble is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& obj : locals) best = std::min(best, strong_convexity_constant(obj));
  return best;
}

double ObjectiveEnsemble::sum_value(const Eigen::VectorXd& x) const {
  double total = 0.0;
  for (const auto& obj : locals) total += value_local(obj, x);
  return total;
}

Eigen::VectorXd ObjectiveEnsemble::sum_gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(x.size());
  for (const auto& obj : locals) total += grad_local(obj, x);
  return total;
}

void validate(const ObjectiveEnsemble& ens) {
  if (ens.locals.empty()) throw std::invalid_argument("ensemble is empty");
  const int p = dimension(ens.locals.front());
  for (const auto& obj : ens.locals) {
    validate(obj);
    if (dimension(obj) != p)
      throw std::invalid_argument("ensemble locals disagree on dimension");
  }
}

namespace {

// 10^e by repeated multiplication, exact for the exponents in use.
double pow10_int(int e) {
  double v = 1.0;
  for (int i = 0; i < std::abs(e); ++i) v *= 10.0;
  return e >= 0 ? v : 1.0 / v;
}

}  // namespace

ObjectiveEnsemble make_quadratic_ensemble(int n, int p, const std::vector<double>& tau_assignment,
                                          std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("quadratic ensemble: n must be >= 1");
  if (p < 2 || p % 2 != 0)
    throw std::invalid_argument("quadratic ensemble: p must be even and >= 2");
  if (static_cast<int>(tau_assignment.size()) != n)
    throw std::invalid_argument("quadratic ensemble: tau assignment must have one entry per agent");

  ObjectiveEnsemble ens;
  ens.locals.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double tau = tau_assignment[static_cast<std::size_t>(i)];
    if (!(tau >= 0.0) || tau != std::floor(tau))
      throw std::invalid_argument("quadratic ensemble: tau must be a nonnegative integer");
    const auto levels = static_cast<std::uint64_t>(tau) + 1;

    Rng rng(seed, streams::kEnsemble + static_cast<std::uint64_t>(i));
    QuadraticObjective q;
    q.diag.resize(p);
    q.linear.resize(p);
    const int half = p / 2;
    for (int j = 0; j < half; ++j)
      q.diag[j] = pow10_int(-static_cast<int>(rng.uniform_int(levels)));
    for (int j = half; j < p; ++j)
      q.diag[j] = pow10_int(static_cast<int>(rng.uniform_int(levels)));
    for (int j = 0; j < p; ++j) q.linear[j] = rng.uniform();
    ens.locals.emplace_back(std::move(q));
  }
  return ens;
}

Eigen::VectorXd reference_minimizer(const ObjectiveEnsemble& ens, double tol) {
  validate(ens);
  if (!(tol > 0.0)) throw std::invalid_argument("reference tolerance must be positive");
  const int p = ens.dim();

  bool all_quadratic = true;
  bool all_ridge = true;
  for (const auto& obj : ens.locals) {
    all_quadratic &= kind_of(obj) == ObjectiveKind::Quadratic;
    all_ridge &= kind_of(obj) == ObjectiveKind::Ridge;
  }

  if (all_quadratic) {
    Eigen::VectorXd diag_sum = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd linear_sum = Eigen::VectorXd::Zero(p);
    for (const auto& obj : ens.locals) {
      const auto& q = std::get<QuadraticObjective>(obj);
      diag_sum += q.diag;
      linear_sum += q.linear;
    }
    return (-linear_sum.array() / diag_sum.array()).matrix();
  }

  if (all_ridge) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
    double rho_sum = 0.0;
    for (const auto& obj : ens.locals) {
      const auto& r = std::get<RidgeObjective>(obj);
      h.noalias() += 2.0 * (r.a.transpose() * r.a);
      rhs.noalias() += 2.0 * (r.a.transpose() * r.b);
      rho_sum += r.rho;
    }
    h.diagonal().array() += 2.0 * rho_sum;
    const Eigen::VectorXd x = h.ldlt().solve(rhs);
    if ((h * x - rhs).norm() > 1e-8 * std::max(1.0, rhs.norm()))
      throw std::runtime_error("ridge reference solve is ill conditioned");
    return x;
  }

  const MinimizeResult result = minimize_sum_adaptive(ens, tol, 1000000);
  if (!result.converged)
    throw std::runtime_error("reference solve did not reach tolerance " + std::to_string(tol) +
                             " within the iteration cap (gradient norm " +
                             std::to_string(result.grad_norm) + ")");
  return result.x;
}

namespace {

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a JSON array of rows");
  const Eigen::VectorXd first = vector_from_json(j[0]);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), first.size());
  m.row(0) = first.transpose();
  for (std::size_t i = 1; i < j.size(); ++i) {
    const Eigen::VectorXd row = vector_from_json(j[i]);
    if (row.size() != first.size()) throw std::invalid_argument("ragged JSON matrix");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

}  // namespace

nlohmann::json ensemble_to_json(const ObjectiveEnsemble& ens) {
  nlohmann::json locals = nlohmann::json::array();
  for (const auto& obj : ens.locals) {
    nlohmann::json entry;
    entry["kind"] = to_string(kind_of(obj));
    std::visit(
        [&entry](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, QuadraticObjective>) {
            entry["diag"] = vector_to_json(o.diag);
            entry["linear"] = vector_to_json(o.linear);
          } else if constexpr (std::is_same_v<T, LogisticObjective>) {
            entry["features"] = matrix_to_json(o.features);
            entry["labels"] = vector_to_json(o.labels);
            entry["rho"] = o.rho;
          } else {
            entry["a"] = matrix_to_json(o.a);
            entry["b"] = vector_to_json(o.b);
            entry["rho"] = o.rho;
          }
        },
        obj);
    locals.push_back(std::move(entry));
  }
  return nlohmann::json{{"dim", ens.locals.empty() ? 0 : ens.dim()}, {"locals", std::move(locals)}};
}

ObjectiveEnsemble ensemble_from_json(const nlohmann::json& j) {
  ObjectiveEnsemble ens;
  for (const auto& entry : j.at("locals")) {
    const ObjectiveKind kind = objective_kind_from_string(entry.at("kind").get<std::string>());
    switch (kind) {
      case ObjectiveKind::Quadratic: {
        QuadraticObjective q;
        q.diag = vector_from_json(entry.at("diag"));
        q.linear = vector_from_json(entry.at("linear"));
        ens.locals.emplace_back(std::move(q));
        break;
      }
      case ObjectiveKind::Logistic: {
        LogisticObjective l;
        l.features = matrix_from_json(entry.at("features"));
        l.labels = vector_from_json(entry.at("labels"));
        l.rho = entry.at("rho").get<double>();
        ens.locals.emplace_back(std::move(l));
        break;
      }
      case ObjectiveKind::Ridge: {
        RidgeObjective r;
        r.a = matrix_from_json(entry.at("a"));
        r.b = vector_from_json(entry.at("b"));
        r.rho = entry.at("rho").get<double>();
        ens.locals.emplace_back(std::move(r));
        break;
      }
    }
  }
  validate(ens);
  return ens;
}

}  // namespace adgt

#include "adgt/config.hpp"

#include <cmath>
#include <fstream>

#include "adgt/trace.hpp"

namespace adgt {

std::string to_string(StandardizeScope scope) {
  return scope == StandardizeScope::Local ? "local" : "global";
}

StandardizeScope standardize_scope_from_string(const std::string& name) {
  if (name == "local") return StandardizeScope::Local;
  if (name == "global") return StandardizeScope::Global;
  throw ConfigError("unknown standardize scope: " + name);
}

std::string to_string(EngineKind kind) {
  return kind == EngineKind::Decentralized ? "decentralized" : "centralized";
}

EngineKind engine_kind_from_string(const std::string& name) {
  if (name == "decentralized") return EngineKind::Decentralized;
  if (name == "centralized") return EngineKind::Centralized;
  throw ConfigError("unknown engine kind: " + name);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.schema_version != 1)
    throw ConfigError("unsupported schema_version " + std::to_string(cfg.schema_version));
  if (cfg.threads < 1 || cfg.threads > 256) throw ConfigError("threads must lie in [1, 256]");

  const auto& topo = cfg.topology;
  if (topo.n < 1) throw ConfigError("topology.n must be positive");
  if (topo.kind == TopologyKind::Random) {
    if (!topo.connectivity_ratio)
      throw ConfigError("topology.connectivity_ratio is required for random topologies");
    const double r = *topo.connectivity_ratio;
    if (!(r > 0.0) || r > 1.0) throw ConfigError("topology.connectivity_ratio must lie in (0,1]");
  }
  if (topo.kind == TopologyKind::Ladder && topo.n % 2 != 0)
    throw ConfigError("ladder topologies need an even number of agents");
  if (topo.kind == TopologyKind::Cycle && topo.n < 3 && cfg.algorithm.engine == EngineKind::Decentralized)
    throw ConfigError("cycle topologies need at least 3 agents");

  const auto& obj = cfg.objective;
  switch (obj.kind) {
    case ObjectiveKind::Quadratic:
      if (obj.p < 2 || obj.p % 2 != 0) throw ConfigError("objective.p must be even and >= 2");
      if (static_cast<int>(obj.tau.size()) != topo.n)
        throw ConfigError("objective.tau needs one entry per agent");
      for (const double t : obj.tau)
        if (!(t >= 0.0) || t != std::floor(t))
          throw ConfigError("objective.tau entries must be nonnegative integers");
      break;
    case ObjectiveKind::Logistic:
      if (obj.dim < 1) throw ConfigError("objective.dim must be positive");
      if (obj.m_per_agent < 1) throw ConfigError("objective.m_per_agent must be positive");
      if (!(obj.rho >= 0.0)) throw ConfigError("objective.rho must be >= 0");
      break;
    case ObjectiveKind::Ridge:
      if (obj.dim < 1) throw ConfigError("objective.dim must be positive");
      if (obj.m_per_agent < 1) throw ConfigError("objective.m_per_agent must be positive");
      if (!(obj.rho > 0.0)) throw ConfigError("objective.rho must be positive");
      break;
  }

  const auto& alg = cfg.algorithm;
  if (!(alg.alpha0 > 0.0)) throw ConfigError("algorithm.alpha0 must be positive");
  if (!(alg.theta0 >= 0.0)) throw ConfigError("algorithm.theta0 must be >= 0");
  if (!(alg.gamma > 0.0)) throw ConfigError("algorithm.gamma must be positive");
  if (alg.engine == EngineKind::Centralized && alg.policy != StepsizePolicy::AdGD &&
      alg.policy != StepsizePolicy::Fixed)
    throw ConfigError("centralized runs support only the adgd and fixed policies");
  if (alg.engine == EngineKind::Decentralized && topo.n < 2)
    throw ConfigError("decentralized runs need at least 2 agents");

  if (cfg.budget.max_iters < 0) throw ConfigError("budget.max_iters must be >= 0");
  if (!(cfg.budget.tol > 0.0)) throw ConfigError("budget.tol must be positive");
  if (!(cfg.reference_tol > 0.0)) throw ConfigError("reference_tol must be positive");
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json topo{{"kind", to_string(cfg.topology.kind)}, {"n", cfg.topology.n}};
  if (cfg.topology.connectivity_ratio)
    topo["connectivity_ratio"] = *cfg.topology.connectivity_ratio;

  nlohmann::json obj{{"kind", to_string(cfg.objective.kind)}};
  switch (cfg.objective.kind) {
    case ObjectiveKind::Quadratic:
      obj["p"] = cfg.objective.p;
      obj["tau"] = cfg.objective.tau;
      break;
    case ObjectiveKind::Logistic:
      obj["dataset"] = cfg.objective.dataset_path;
      obj["dim"] = cfg.objective.dim;
      obj["m_per_agent"] = cfg.objective.m_per_agent;
      obj["rho"] = cfg.objective.rho;
      obj["standardize_scope"] = to_string(cfg.objective.standardize_scope);
      break;
    case ObjectiveKind::Ridge:
      obj["dataset"] = cfg.objective.dataset_path;
      obj["dim"] = cfg.objective.dim;
      obj["m_per_agent"] = cfg.objective.m_per_agent;
      obj["rho"] = cfg.objective.rho;
      break;
  }

  nlohmann::json alg{{"engine", to_string(cfg.algorithm.engine)},
                     {"policy", to_string(cfg.algorithm.policy)},
                     {"alpha0", cfg.algorithm.alpha0},
                     {"theta0", cfg.algorithm.theta0},
                     {"gamma", cfg.algorithm.gamma},
                     {"update_variant", to_string(cfg.algorithm.variant)},
                     {"force_constant_alpha", cfg.algorithm.force_constant_alpha}};

  return nlohmann::json{
      {"schema_version", cfg.schema_version},
      {"seed", cfg.seed},
      {"threads", cfg.threads},
      {"topology", std::move(topo)},
      {"objective", std::move(obj)},
      {"algorithm", std::move(alg)},
      {"budget", {{"max_iters", cfg.budget.max_iters}, {"tol", cfg.budget.tol}}},
      {"reference_tol", cfg.reference_tol},
  };
}

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key, const char* where) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError(std::string("missing field '") + key + "' in " + where);
  return *it;
}

template <class T>
T get_as(const nlohmann::json& j, const char* key, const char* where) {
  try {
    return require(j, key, where).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("field '") + key + "' in " + where + " has the wrong type");
  }
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig cfg;
  cfg.schema_version = get_as<int>(j, "schema_version", "config");
  cfg.seed = get_as<std::uint64_t>(j, "seed", "config");
  cfg.threads = j.value("threads", 1);

  const nlohmann::json& topo = require(j, "topology", "config");
  cfg.topology.kind = topology_kind_from_string(get_as<std::string>(topo, "kind", "topology"));
  cfg.topology.n = get_as<int>(topo, "n", "topology");
  if (topo.contains("connectivity_ratio"))
    cfg.topology.connectivity_ratio = get_as<double>(topo, "connectivity_ratio", "topology");

  const nlohmann::json& obj = require(j, "objective", "config");
  cfg.objective.kind = objective_kind_from_string(get_as<std::string>(obj, "kind", "objective"));
  switch (cfg.objective.kind) {
    case ObjectiveKind::Quadratic:
      cfg.objective.p = get_as<int>(obj, "p", "objective");
      cfg.objective.tau = get_as<std::vector<double>>(obj, "tau", "objective");
      break;
    case ObjectiveKind::Logistic:
      cfg.objective.dataset_path = obj.value("dataset", std::string{});
      cfg.objective.dim = get_as<int>(obj, "dim", "objective");
      cfg.objective.m_per_agent = get_as<int>(obj, "m_per_agent", "objective");
      cfg.objective.rho = get_as<double>(obj, "rho", "objective");
      cfg.objective.standardize_scope =
          standardize_scope_from_string(obj.value("standardize_scope", std::string("local")));
      break;
    case ObjectiveKind::Ridge:
      cfg.objective.dataset_path = obj.value("dataset", std::string{});
      cfg.objective.dim = get_as<int>(obj, "dim", "objective");
      cfg.objective.m_per_agent = get_as<int>(obj, "m_per_agent", "objective");
      cfg.objective.rho = get_as<double>(obj, "rho", "objective");
      break;
  }

  const nlohmann::json& alg = require(j, "algorithm", "config");
  cfg.algorithm.engine = engine_kind_from_string(alg.value("engine", std::string("decentralized")));
  cfg.algorithm.policy = stepsize_policy_from_string(get_as<std::string>(alg, "policy", "algorithm"));
  cfg.algorithm.alpha0 = alg.value("alpha0", 1e-3);
  cfg.algorithm.theta0 = alg.value("theta0", 0.0);
  cfg.algorithm.gamma = alg.value("gamma", 1.0);
  cfg.algorithm.variant =
      update_variant_from_string(alg.value("update_variant", std::string("compact")));
  cfg.algorithm.force_constant_alpha = alg.value("force_constant_alpha", false);

  const nlohmann::json& budget = require(j, "budget", "config");
  cfg.budget.max_iters = get_as<long>(budget, "max_iters", "budget");
  cfg.budget.tol = get_as<double>(budget, "tol", "budget");
  cfg.reference_tol = j.value("reference_tol", 1e-12);

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a64(config_to_json(cfg).dump());
}

}  // namespace adgt

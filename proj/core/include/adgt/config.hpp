#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgt/engine.hpp"
#include "adgt/objectives.hpp"
#include "adgt/topology.hpp"

namespace adgt {

// Raised for anything wrong with user-supplied configuration (bad values,
// missing files); the CLI maps it to its own exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StandardizeScope { Local, Global };

std::string to_string(StandardizeScope scope);
StandardizeScope standardize_scope_from_string(const std::string& name);

struct TopologySpec {
  TopologyKind kind = TopologyKind::Random;
  int n = 0;
  std::optional<double> connectivity_ratio;  // Random only
};

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::Quadratic;
  // Quadratic
  int p = 0;
  std::vector<double> tau;  // one entry per agent
  // Logistic / Ridge
  std::string dataset_path;  // empty selects synthetic data
  int dim = 0;               // raw feature count before intercept
  int m_per_agent = 0;
  double rho = 0.0;
  // Local standardizes each agent's samples after partitioning; Global
  // standardizes the pool first.  Logistic only; ridge uses raw matrices.
  StandardizeScope standardize_scope = StandardizeScope::Local;
};

enum class EngineKind { Decentralized, Centralized };

std::string to_string(EngineKind kind);
EngineKind engine_kind_from_string(const std::string& name);

struct AlgorithmSpec {
  EngineKind engine = EngineKind::Decentralized;
  StepsizePolicy policy = StepsizePolicy::AdGT;
  double alpha0 = 1e-3;
  double theta0 = 0.0;
  double gamma = 1.0;
  UpdateVariant variant = UpdateVariant::Compact;
  bool force_constant_alpha = false;
};

struct BudgetSpec {
  long max_iters = 100000;
  double tol = 1e-10;
};

// One fully reproducible run: the config plus the code version pins the
// trace bitwise.
struct ExperimentConfig {
  int schema_version = 1;
  std::uint64_t seed = 42;
  int threads = 1;
  TopologySpec topology;
  ObjectiveSpec objective;
  AlgorithmSpec algorithm;
  BudgetSpec budget;
  double reference_tol = 1e-12;
};

// Throws ConfigError describing every problem found (ranges, shapes,
// missing fields).  Does not touch the filesystem.
void validate(const ExperimentConfig& cfg);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

// FNV-1a over the canonical (sorted-key) JSON dump.
std::uint64_t config_hash(const ExperimentConfig& cfg);

}  // namespace adgt

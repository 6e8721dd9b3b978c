#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgt/config.hpp"
#include "adgt/engine.hpp"
#include "adgt/mixing.hpp"
#include "adgt/objectives.hpp"
#include "adgt/trace.hpp"

namespace adgt {

// Everything a run needs, built deterministically from a config: the
// ensemble, the network, and the reference minimizer for residuals.
struct PreparedProblem {
  Topology topology;
  MixingMatrix mixing;
  ObjectiveEnsemble ensemble;
  Eigen::VectorXd x_star;
};

PreparedProblem prepare_problem(const ExperimentConfig& cfg);

// Runs the configured engine on an already prepared problem.
RunTrace execute_run(const ExperimentConfig& cfg, const PreparedProblem& problem);

struct RunArtifacts {
  RunTrace trace;
  nlohmann::json metadata;
};

RunArtifacts run_experiment(const ExperimentConfig& cfg);
RunArtifacts run_experiment(const ExperimentConfig& cfg, const PreparedProblem& problem);

// Writes <stem>.csv and <stem>.meta.json under out_dir; the metadata gains
// the trace file name and its content hash.  Returns the metadata actually
// written.
nlohmann::json write_artifacts(const RunArtifacts& artifacts, const std::string& out_dir,
                               const std::string& stem);

// Reloads a metadata sidecar and re-hashes the trace and config it points
// to; throws std::runtime_error on any mismatch.
nlohmann::json load_and_verify_metadata(const std::string& meta_path);

// Residual levels reported by comparisons.
extern const std::vector<double> kResidualThresholds;  // 1e-2 1e-4 1e-6 1e-8

struct GridSearchEntry {
  double alpha = 0.0;
  RunStatus status = RunStatus::BudgetExhausted;
  long iterations = 0;
  double final_residual = 0.0;
  // Iterations to each residual threshold, -1 when unreached.
  std::vector<long> iterations_to;
};

struct GridSearchResult {
  std::vector<GridSearchEntry> entries;
  std::optional<double> best_alpha;  // empty when every entry diverged
  bool all_diverged = false;
};

// Fixed-stepsize runs over the grid.  The winner reaches the finest residual
// threshold reached by anyone, in the fewest iterations, ties toward the
// smaller stepsize; diverged entries rank last.
GridSearchResult grid_search_gt(const ExperimentConfig& cfg, const PreparedProblem& problem,
                                const std::vector<double>& alpha_grid);

// {2^k / L : k = -6..1}, ascending.
std::vector<double> default_alpha_grid(double L);

enum class ExperimentFamily { LogisticTopologies, QuadraticScenarios, RidgeScaling };
enum class ExperimentScale { Desk, Paper };

std::string to_string(ExperimentFamily family);
ExperimentFamily experiment_family_from_string(const std::string& name);
std::string to_string(ExperimentScale scale);
ExperimentScale experiment_scale_from_string(const std::string& name);

struct MethodOutcome {
  std::string instance;  // e.g. topology or scenario name
  std::string method;    // adgt, gt-tuned, method-dm, adgd, gd-tuned
  RunStatus status = RunStatus::BudgetExhausted;
  long iterations = 0;
  double final_residual = 0.0;
  std::map<std::string, long> iterations_to;  // threshold -> first k, absent if unreached
  std::optional<double> tuned_alpha;          // grid winners only
  std::string trace_file;                     // relative to the report directory
};

struct ComparisonReport {
  std::string family;
  std::string scale;
  std::uint64_t seed = 42;
  std::vector<MethodOutcome> entries;
};

nlohmann::json report_to_json(const ComparisonReport& report);
ComparisonReport report_from_json(const nlohmann::json& j);

// Re-reads every trace CSV named by the report and re-derives the iteration
// counts; throws std::runtime_error on the first inconsistency.
void verify_report_against_traces(const ComparisonReport& report, const std::string& dir);

struct ReproduceOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 42;
  std::string dataset_path;  // required at paper scale for dataset families
  int threads = 1;
};

// Runs one experiment family end to end: AdGT, grid-tuned GT and the
// adaptive baseline per instance (plus centralized AdGD/tuned GD for the
// quadratic family), writing per-method traces and a report JSON under
// out_dir.  Desk scale substitutes synthetic data for dataset-backed
// families; paper scale requires the dataset file and full problem sizes.
ComparisonReport reproduce_experiment(ExperimentFamily family, ExperimentScale scale,
                                      const ReproduceOptions& options);

}  // namespace adgt

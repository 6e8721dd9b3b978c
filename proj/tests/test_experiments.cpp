// Experiment harness: problem preparation, artifact writing with fingerprint
// verification, fixed-stepsize grid search, and comparison reports.

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "adgt/experiments.hpp"
#include "adgt/trace.hpp"

using adgt::ComparisonReport;
using adgt::ExperimentConfig;
using adgt::GridSearchResult;
using adgt::ObjectiveKind;
using adgt::PreparedProblem;
using adgt::prepare_problem;
using adgt::RunArtifacts;
using adgt::RunStatus;
using adgt::StepsizePolicy;
using adgt::TopologyKind;

namespace {

ExperimentConfig small_quadratic_config() {
  ExperimentConfig cfg;
  cfg.seed = 42;
  cfg.topology.kind = TopologyKind::Cycle;
  cfg.topology.n = 6;
  cfg.objective.kind = ObjectiveKind::Quadratic;
  cfg.objective.p = 4;
  cfg.objective.tau.assign(6, 1.0);
  cfg.algorithm.policy = StepsizePolicy::AdGT;
  cfg.algorithm.alpha0 = 1e-3;
  cfg.budget.max_iters = 20000;
  cfg.budget.tol = 1e-9;
  return cfg;
}

ExperimentConfig small_logistic_config() {
  ExperimentConfig cfg;
  cfg.seed = 42;
  cfg.topology.kind = TopologyKind::Cycle;
  cfg.topology.n = 4;
  cfg.objective.kind = ObjectiveKind::Logistic;
  cfg.objective.dim = 6;
  cfg.objective.m_per_agent = 12;
  cfg.objective.rho = 0.05;
  cfg.algorithm.policy = StepsizePolicy::AdGT;
  cfg.budget.max_iters = 20000;
  cfg.budget.tol = 1e-8;
  return cfg;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("adgt_experiments_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("problem preparation is deterministic and internally consistent") {
  const ExperimentConfig cfg = small_quadratic_config();
  const PreparedProblem a = prepare_problem(cfg);
  const PreparedProblem b = prepare_problem(cfg);
  CHECK(a.mixing.w == b.mixing.w);
  CHECK(a.x_star == b.x_star);
  CHECK(a.topology.edges == b.topology.edges);
  REQUIRE(a.ensemble.n() == 6);
  // The reference point zeroes the ensemble gradient.
  CHECK(a.ensemble.sum_gradient(a.x_star).norm() <= 1e-10);

  const ExperimentConfig lcfg = small_logistic_config();
  const PreparedProblem l = prepare_problem(lcfg);
  REQUIRE(l.ensemble.n() == 4);
  // Standardize-then-intercept widens the feature dimension by one.
  CHECK(l.ensemble.dim() == 7);
  CHECK(l.ensemble.sum_gradient(l.x_star).norm() <= 1e-10);
}

TEST_CASE("logistic agents need at least two samples to standardize locally") {
  ExperimentConfig cfg = small_logistic_config();
  cfg.objective.m_per_agent = 1;
  CHECK_THROWS_AS(prepare_problem(cfg), adgt::ConfigError);
}

TEST_CASE("artifacts round-trip and tampering is caught") {
  const TempDir dir;
  const ExperimentConfig cfg = small_quadratic_config();
  const RunArtifacts artifacts = adgt::run_experiment(cfg);
  CHECK(artifacts.trace.status == RunStatus::Converged);

  const nlohmann::json meta = adgt::write_artifacts(artifacts, dir.str(), "probe");
  const std::string meta_path = (dir.path / "probe.meta.json").string();
  const std::string csv_path = (dir.path / "probe.csv").string();
  REQUIRE(std::filesystem::exists(meta_path));
  REQUIRE(std::filesystem::exists(csv_path));
  CHECK(meta.at("trace_file").get<std::string>() == "probe.csv");

  // Clean verification passes and returns the same metadata.
  const nlohmann::json verified = adgt::load_and_verify_metadata(meta_path);
  CHECK(verified.at("trace_hash") == meta.at("trace_hash"));

  // Any edit to the trace bytes breaks the fingerprint.
  const std::string original = adgt::read_text_file(csv_path);
  adgt::write_text_file(csv_path, original + "tail\n");
  CHECK_THROWS_AS(adgt::load_and_verify_metadata(meta_path), std::runtime_error);
  adgt::write_text_file(csv_path, original);
  CHECK_NOTHROW(adgt::load_and_verify_metadata(meta_path));
}

TEST_CASE("run metadata records the inputs that pin the trace") {
  const ExperimentConfig cfg = small_quadratic_config();
  const RunArtifacts artifacts = adgt::run_experiment(cfg);
  const nlohmann::json& meta = artifacts.metadata;
  CHECK(meta.at("config_hash").is_string());
  const nlohmann::json& problem = meta.at("problem");
  CHECK(problem.at("lambda").get<double>() > 0.0);
  CHECK(problem.at("lambda").get<double>() < 1.0);
  CHECK(problem.at("agents").get<int>() == 6);
  const nlohmann::json& result = meta.at("result");
  CHECK(result.at("status").get<std::string>() == "converged");
  CHECK(result.at("tracking_violation_max").get<double>() <= 1e-10);
  CHECK(result.at("iterations").get<long>() == artifacts.trace.iterations);
  // Reported threshold crossings agree with the trace rows.
  const auto& to = result.at("iterations_to");
  for (std::size_t t = 0; t < adgt::kResidualThresholds.size(); ++t) {
    const long direct = artifacts.trace.iterations_to(adgt::kResidualThresholds[t]);
    if (direct >= 0) {
      bool found = false;
      for (const auto& [key, value] : to.items())
        if (value.get<long>() == direct) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("default stepsize grid spans powers of two over the curvature") {
  const std::vector<double> grid = adgt::default_alpha_grid(4.0);
  REQUIRE(grid.size() == 8);
  CHECK(grid.front() == doctest::Approx(std::pow(2.0, -6) / 4.0).epsilon(1e-15));
  CHECK(grid.back() == doctest::Approx(2.0 / 4.0).epsilon(1e-15));
  CHECK(std::is_sorted(grid.begin(), grid.end()));
}

TEST_CASE("grid search returns the singleton for a one-point grid") {
  ExperimentConfig cfg = small_quadratic_config();
  cfg.algorithm.policy = StepsizePolicy::Fixed;
  cfg.budget.max_iters = 4000;
  const PreparedProblem problem = prepare_problem(cfg);
  const double alpha = 0.25 / problem.ensemble.smoothness();
  const GridSearchResult res = adgt::grid_search_gt(cfg, problem, {alpha});
  REQUIRE(res.entries.size() == 1);
  REQUIRE(res.best_alpha.has_value());
  CHECK(*res.best_alpha == alpha);
  CHECK_FALSE(res.all_diverged);
}

TEST_CASE("grid search prefers the stepsize that converges fastest") {
  ExperimentConfig cfg = small_quadratic_config();
  cfg.algorithm.policy = StepsizePolicy::Fixed;
  cfg.budget.max_iters = 30000;
  cfg.budget.tol = 1e-9;
  const PreparedProblem problem = prepare_problem(cfg);
  const std::vector<double> grid = adgt::default_alpha_grid(problem.ensemble.smoothness());
  const GridSearchResult res = adgt::grid_search_gt(cfg, problem, grid);
  REQUIRE(res.best_alpha.has_value());
  CHECK_FALSE(res.all_diverged);
  REQUIRE(res.entries.size() == grid.size());
  // Entries stay in grid order.
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(res.entries[i].alpha == grid[i]);
  // The winner reaches the finest threshold anyone reached, at least as fast.
  int finest = -1;
  for (const auto& e : res.entries)
    for (int t = static_cast<int>(e.iterations_to.size()) - 1; t >= 0; --t)
      if (e.iterations_to[static_cast<std::size_t>(t)] >= 0) {
        finest = std::max(finest, t);
        break;
      }
  REQUIRE(finest >= 0);
  const auto winner = std::find_if(res.entries.begin(), res.entries.end(),
                                   [&](const auto& e) { return e.alpha == *res.best_alpha; });
  REQUIRE(winner != res.entries.end());
  const long winner_iters = winner->iterations_to[static_cast<std::size_t>(finest)];
  REQUIRE(winner_iters >= 0);
  for (const auto& e : res.entries) {
    const long k = e.iterations_to[static_cast<std::size_t>(finest)];
    if (k >= 0) CHECK(winner_iters <= k);
  }
}

TEST_CASE("grid search reports total failure when every stepsize diverges") {
  ExperimentConfig cfg = small_quadratic_config();
  cfg.objective.tau.assign(6, 3.0);  // condition number 1e6
  cfg.algorithm.policy = StepsizePolicy::Fixed;
  cfg.budget.max_iters = 2000;
  const PreparedProblem problem = prepare_problem(cfg);
  // Stepsizes far above 2/L on a stiff problem: everything blows up.
  const GridSearchResult res = adgt::grid_search_gt(cfg, problem, {10.0, 100.0});
  CHECK(res.all_diverged);
  CHECK_FALSE(res.best_alpha.has_value());
  for (const auto& e : res.entries) CHECK(e.status == RunStatus::Diverged);
}

TEST_CASE("family and scale names round-trip") {
  using adgt::ExperimentFamily;
  using adgt::ExperimentScale;
  for (const ExperimentFamily f :
       {ExperimentFamily::LogisticTopologies, ExperimentFamily::QuadraticScenarios,
        ExperimentFamily::RidgeScaling})
    CHECK(adgt::experiment_family_from_string(adgt::to_string(f)) == f);
  for (const ExperimentScale s : {ExperimentScale::Desk, ExperimentScale::Paper})
    CHECK(adgt::experiment_scale_from_string(adgt::to_string(s)) == s);
  CHECK_THROWS(adgt::experiment_family_from_string("imagenet"));
  CHECK_THROWS(adgt::experiment_scale_from_string("warehouse"));
}

TEST_CASE("comparison reports survive JSON and trace verification catches edits") {
  const TempDir dir;
  adgt::ReproduceOptions options;
  options.out_dir = dir.str();
  options.seed = 42;
  const ComparisonReport report = adgt::reproduce_experiment(
      adgt::ExperimentFamily::QuadraticScenarios, adgt::ExperimentScale::Desk, options);
  REQUIRE(!report.entries.empty());

  // Five methods per scenario, four scenarios.
  CHECK(report.entries.size() == 20);
  CHECK(report.family == "quadratic-scenarios");
  CHECK(report.scale == "desk");

  // The adaptive decentralized method converges on every scenario.
  int adgt_converged = 0;
  for (const auto& e : report.entries)
    if (e.method == "adgt" && e.status == RunStatus::Converged) ++adgt_converged;
  CHECK(adgt_converged == 4);

  // Round trip through JSON compares field by field.
  const ComparisonReport back = adgt::report_from_json(adgt::report_to_json(report));
  REQUIRE(back.entries.size() == report.entries.size());
  CHECK(back.family == report.family);
  CHECK(back.seed == report.seed);
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    CHECK(back.entries[i].instance == report.entries[i].instance);
    CHECK(back.entries[i].method == report.entries[i].method);
    CHECK(back.entries[i].iterations == report.entries[i].iterations);
    CHECK(back.entries[i].final_residual == report.entries[i].final_residual);
    CHECK(back.entries[i].iterations_to == report.entries[i].iterations_to);
    CHECK(back.entries[i].tuned_alpha.has_value() ==
          report.entries[i].tuned_alpha.has_value());
  }

  // The self-check passes on pristine traces and rejects a corrupted one.
  CHECK_NOTHROW(adgt::verify_report_against_traces(report, dir.str()));
  const std::string victim = (dir.path / report.entries.front().trace_file).string();
  const std::string original = adgt::read_text_file(victim);
  const std::string::size_type cut = original.rfind("\n", original.size() - 2);
  REQUIRE(cut != std::string::npos);
  adgt::write_text_file(victim, original.substr(0, cut + 1));
  CHECK_THROWS_AS(adgt::verify_report_against_traces(report, dir.str()),
                  std::runtime_error);
}

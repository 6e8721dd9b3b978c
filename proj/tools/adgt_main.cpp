// Command-line front end: single runs, stepsize grid searches, experiment
// reproduction, stepsize-bound sweeps, and reference solves.
//
// Exit codes: 0 success/converged, 2 diverged (or an all-diverged grid),
// 3 budget exhausted, 4 configuration error, 1 internal error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adgt/bounds.hpp"
#include "adgt/config.hpp"
#include "adgt/experiments.hpp"
#include "adgt/mixing.hpp"
#include "adgt/trace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDiverged = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConfig = 4;

// One-line machine-parsable error record on stderr.
void emit_error(const std::string& kind, const std::string& message) {
  std::string escaped;
  escaped.reserve(message.size());
  for (const char c : message) {
    if (c == '"' || c == '\\') escaped.push_back('\\');
    escaped.push_back(c == '\n' ? ' ' : c);
  }
  std::cerr << "error kind=" << kind << " message=\"" << escaped << "\"\n";
}

int status_exit_code(adgt::RunStatus status) {
  switch (status) {
    case adgt::RunStatus::Converged: return kExitOk;
    case adgt::RunStatus::Diverged: return kExitDiverged;
    case adgt::RunStatus::BudgetExhausted: return kExitBudget;
  }
  return kExitInternal;
}

// Grid syntax: either "lo:hi:count" (inclusive linear spacing) or a
// comma-separated list of values.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  const auto parse_one = [](const std::string& tok) {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw adgt::ConfigError("bad number in grid: '" + tok + "'");
    return v;
  };
  if (text.find(':') != std::string::npos) {
    std::istringstream in(text);
    std::string lo_s, hi_s, count_s;
    if (!std::getline(in, lo_s, ':') || !std::getline(in, hi_s, ':') ||
        !std::getline(in, count_s) || count_s.empty())
      throw adgt::ConfigError("grid ranges use lo:hi:count, got '" + text + "'");
    const double lo = parse_one(lo_s);
    const double hi = parse_one(hi_s);
    const long count = std::stol(count_s);
    if (count < 1) throw adgt::ConfigError("grid range needs count >= 1");
    if (count == 1) return {lo};
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
      out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
    return out;
  }
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(parse_one(tok));
  }
  if (out.empty()) throw adgt::ConfigError("empty grid: '" + text + "'");
  return out;
}

struct RunArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string stem = "run";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<long> max_iters;
};

int cmd_run(const RunArgs& args) {
  adgt::ExperimentConfig cfg = adgt::load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;
  if (args.max_iters) cfg.budget.max_iters = *args.max_iters;
  adgt::validate(cfg);

  const adgt::RunArtifacts art = adgt::run_experiment(cfg);
  const nlohmann::json meta = adgt::write_artifacts(art, args.out_dir, args.stem);
  std::cout << "status=" << to_string(art.trace.status) << " iterations=" << art.trace.iterations
            << " final_residual=" << adgt::format_full(art.trace.final_residual)
            << " trace=" << args.out_dir << "/" << meta.at("trace_file").get<std::string>()
            << "\n";
  if (art.trace.status != adgt::RunStatus::Converged)
    emit_error(to_string(art.trace.status),
               "run ended with status " + to_string(art.trace.status) + " after " +
                   std::to_string(art.trace.iterations) + " iterations");
  return status_exit_code(art.trace.status);
}

struct GridArgs {
  std::string config_path;
  std::string grid_text;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

int cmd_grid_search(const GridArgs& args) {
  adgt::ExperimentConfig cfg = adgt::load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;
  adgt::validate(cfg);

  const adgt::PreparedProblem problem = adgt::prepare_problem(cfg);
  std::vector<double> grid;
  if (args.grid_text.empty()) {
    double L = 0.0;
    if (cfg.algorithm.engine == adgt::EngineKind::Centralized) {
      for (const adgt::LocalObjective& f : problem.ensemble.locals)
        L += adgt::smoothness_constant(f);
    } else {
      L = problem.ensemble.smoothness();
    }
    grid = adgt::default_alpha_grid(L);
  } else {
    grid = parse_grid(args.grid_text);
  }

  const adgt::GridSearchResult result = adgt::grid_search_gt(cfg, problem, grid);
  for (const adgt::GridSearchEntry& e : result.entries) {
    std::cout << "alpha=" << adgt::format_full(e.alpha) << " status=" << to_string(e.status)
              << " iterations=" << e.iterations
              << " final_residual=" << adgt::format_full(e.final_residual);
    for (std::size_t t = 0; t < adgt::kResidualThresholds.size(); ++t)
      std::cout << " to_" << adgt::kResidualThresholds[t] << "=" << e.iterations_to[t];
    std::cout << "\n";
  }
  if (result.best_alpha)
    std::cout << "best_alpha=" << adgt::format_full(*result.best_alpha) << "\n";
  else
    std::cout << "best_alpha=none all_diverged=true\n";

  if (!args.out_path.empty()) {
    nlohmann::json entries = nlohmann::json::array();
    for (const adgt::GridSearchEntry& e : result.entries) {
      entries.push_back({{"alpha", e.alpha},
                         {"status", to_string(e.status)},
                         {"iterations", e.iterations},
                         {"final_residual", e.final_residual},
                         {"iterations_to", e.iterations_to}});
    }
    nlohmann::json doc{{"entries", std::move(entries)}, {"all_diverged", result.all_diverged}};
    if (result.best_alpha) doc["best_alpha"] = *result.best_alpha;
    adgt::write_text_file(args.out_path, doc.dump(2) + "\n");
  }
  return result.all_diverged ? kExitDiverged : kExitOk;
}

struct ReproduceArgs {
  std::string family;
  std::string scale = "desk";
  adgt::ReproduceOptions options;
};

int cmd_reproduce(const ReproduceArgs& args) {
  const adgt::ComparisonReport report =
      adgt::reproduce_experiment(adgt::experiment_family_from_string(args.family),
                                 adgt::experiment_scale_from_string(args.scale), args.options);
  for (const adgt::MethodOutcome& o : report.entries) {
    std::cout << "instance=" << o.instance << " method=" << o.method
              << " status=" << to_string(o.status) << " iterations=" << o.iterations
              << " final_residual=" << adgt::format_full(o.final_residual);
    if (o.tuned_alpha) std::cout << " tuned_alpha=" << adgt::format_full(*o.tuned_alpha);
    std::cout << "\n";
  }
  std::cout << "report=" << args.options.out_dir << "/" << report.family << "-" << report.scale
            << "-report.json\n";
  return kExitOk;
}

struct SweepArgs {
  double L = 3.0;
  double mu = 1.0;
  std::string lambda_grid = "0.01:0.99:99";
  std::string delta_grid;  // empty selects the analytic default
  std::string out_path = "sweep.csv";
};

int cmd_sweep(const SweepArgs& args) {
  const std::vector<double> lambdas = parse_grid(args.lambda_grid);
  const std::vector<double> deltas = args.delta_grid.empty()
                                         ? adgt::default_delta_grid(args.L, args.mu)
                                         : parse_grid(args.delta_grid);
  const std::vector<adgt::SweepRow> table = adgt::sweep_constants(args.L, args.mu, lambdas, deltas);
  adgt::save_sweep_csv(args.out_path, table);
  std::cout << "rows=" << table.size() << " out=" << args.out_path << "\n";
  return kExitOk;
}

struct ReferenceArgs {
  std::string config_path;
  std::string out_path;
};

int cmd_solve_reference(const ReferenceArgs& args) {
  const adgt::ExperimentConfig cfg = adgt::load_config(args.config_path);
  const adgt::PreparedProblem problem = adgt::prepare_problem(cfg);
  const Eigen::VectorXd grad = problem.ensemble.sum_gradient(problem.x_star);
  std::cout << "dim=" << problem.x_star.size()
            << " x_star_norm=" << adgt::format_full(problem.x_star.norm())
            << " grad_norm=" << adgt::format_full(grad.norm()) << "\n";
  if (!args.out_path.empty())
    adgt::save_matrix_csv(args.out_path, problem.x_star.transpose());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized adaptive gradient-tracking simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Execute one configured run and write its artifacts");
  run->add_option("--config", run_args.config_path, "Config JSON file")->required();
  run->add_option("--out-dir", run_args.out_dir, "Artifact directory");
  run->add_option("--stem", run_args.stem, "Artifact file stem");
  run->add_option("--seed", run_args.seed, "Override the config seed");
  run->add_option("--threads", run_args.threads, "Override the config thread count");
  run->add_option("--max-iters", run_args.max_iters, "Override the iteration budget");

  GridArgs grid_args;
  CLI::App* grid = app.add_subcommand("grid-search", "Tune a fixed stepsize over a grid");
  grid->add_option("--config", grid_args.config_path, "Config JSON file")->required();
  grid->add_option("--grid", grid_args.grid_text,
                   "Stepsize grid: lo:hi:count or comma list (default 2^k/L, k=-6..1)");
  grid->add_option("--out", grid_args.out_path, "Write the table as JSON");
  grid->add_option("--seed", grid_args.seed, "Override the config seed");
  grid->add_option("--threads", grid_args.threads, "Override the config thread count");

  ReproduceArgs repro_args;
  CLI::App* repro = app.add_subcommand("reproduce", "Run one experiment family end to end");
  repro->add_option("--family", repro_args.family,
                    "logistic-topologies | quadratic-scenarios | ridge-scaling")
      ->required();
  repro->add_option("--scale", repro_args.scale, "desk | paper");
  repro->add_option("--out-dir", repro_args.options.out_dir, "Artifact directory");
  repro->add_option("--seed", repro_args.options.seed, "Random seed");
  repro->add_option("--data", repro_args.options.dataset_path,
                    "LIBSVM dataset file (paper scale)");
  repro->add_option("--threads", repro_args.options.threads, "Engine threads per run");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Tabulate stepsize ceilings over (lambda, delta)");
  sweep->add_option("--L", sweep_args.L, "Smoothness constant");
  sweep->add_option("--mu", sweep_args.mu, "Strong convexity constant");
  sweep->add_option("--lambda-grid", sweep_args.lambda_grid, "lo:hi:count or comma list");
  sweep->add_option("--delta-grid", sweep_args.delta_grid,
                    "lo:hi:count or comma list (default {0, (L-mu)/(L+mu)})");
  sweep->add_option("--out", sweep_args.out_path, "Output CSV path");

  ReferenceArgs ref_args;
  CLI::App* ref = app.add_subcommand("solve-reference", "Solve a config's reference minimizer");
  ref->add_option("--config", ref_args.config_path, "Config JSON file")->required();
  ref->add_option("--out", ref_args.out_path, "Write the minimizer as a one-row CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_args);
    if (grid->parsed()) return cmd_grid_search(grid_args);
    if (repro->parsed()) return cmd_reproduce(repro_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (ref->parsed()) return cmd_solve_reference(ref_args);
    emit_error("internal", "no subcommand dispatched");
    return kExitInternal;
  } catch (const adgt::ConfigError& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    emit_error("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitInternal;
  }
}

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adgt/mixing.hpp"
#include "adgt/objectives.hpp"
#include "adgt/stepsize.hpp"

namespace adgt {

// Neighbor-sum placement of the stepsize.  Compact scales each agent's own
// tracker before mixing: x' = W(x - diag(alpha) y).  OwnStep applies the
// receiving agent's stepsize to the mixed tracker: x' = Wx - diag(alpha) Wy.
enum class UpdateVariant { Compact, OwnStep };

std::string to_string(UpdateVariant variant);
UpdateVariant update_variant_from_string(const std::string& name);

enum class RunStatus { Converged, BudgetExhausted, Diverged };

std::string to_string(RunStatus status);
RunStatus run_status_from_string(const std::string& name);

struct EngineConfig {
  StepsizePolicy policy = StepsizePolicy::AdGT;
  double alpha0 = 1e-3;  // also the constant stepsize for Fixed
  double theta0 = 0.0;
  double gamma = 1.0;
  UpdateVariant variant = UpdateVariant::Compact;
  // Skips every stepsize update, freezing alpha at alpha0 regardless of
  // policy; lets adaptive policies be compared bitwise against Fixed.
  bool force_constant_alpha = false;
  int threads = 1;
  long max_iters = 100000;
  double tol = 1e-10;
  double divergence_threshold = 1e12;
};

// Network state at round k, one row per agent.
struct SwarmState {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;     // gradient trackers
  Eigen::MatrixXd grad;  // exact local gradients at x, never stale
  std::vector<StepsizeState> steps;
  long k = 0;

  int n() const { return static_cast<int>(x.rows()); }
  int dim() const { return static_cast<int>(x.cols()); }
  Eigen::VectorXd alphas() const;
};

// Per-agent snapshot (copies), for inspection and tests.
struct AgentState {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd grad;
  StepsizeState step;
};

AgentState agent_state(const SwarmState& s, int i);

// Trackers start at the local gradients: y_i = grad f_i(x0_i).
SwarmState init_swarm(const ObjectiveEnsemble& ens, const Eigen::MatrixXd& x0,
                      const EngineConfig& cfg);
// Broadcasts one point to all agents; zero vector reproduces the default
// initialization x0 = 0.
SwarmState init_swarm(const ObjectiveEnsemble& ens, const Eigen::VectorXd& x0,
                      const EngineConfig& cfg);

struct StepOutcome {
  bool finite = true;
  // Agents whose stepsize update was curvature-limited this round.  Bytes,
  // not vector<bool>: agents write their flags concurrently.
  std::vector<std::uint8_t> curvature_bound;
};

// One synchronous round:
//   z = x - diag(alpha) y   (Compact; see UpdateVariant for OwnStep)
//   x' = W z
//   y' = (W y - grad) + grad f(x')
// then per-agent stepsize updates from the realized displacement norms and
// k+1.  The y update is grouped so that with n=1 the tracker equals the
// gradient bitwise.  If any new entry is non-finite the state is left at
// round k and outcome.finite is false.  Identical results for any thread
// count: agents partition by row and the mixing products are single calls.
StepOutcome step_decentralized(SwarmState& s, const MixingMatrix& w,
                               const ObjectiveEnsemble& ens, const EngineConfig& cfg);

// x' = x - alpha * sum_i grad f_i(x); for adaptive policies the state then
// updates from the realized displacement and gradient difference.
std::pair<Eigen::VectorXd, StepsizeState> step_centralized(const Eigen::VectorXd& x,
                                                           const ObjectiveEnsemble& ens,
                                                           const StepsizeState& step);

// Stepsize dispersion |alpha - mean|/|mean vector| over agents.
double delta_alpha(const Eigen::VectorXd& alphas);

struct TraceRow {
  long k = 0;
  double residual = 0.0;
  double consensus_x = 0.0;
  double consensus_y = 0.0;
  double alpha_min = 0.0;
  double alpha_mean = 0.0;
  double alpha_max = 0.0;
  double delta_alpha = 0.0;
  double seconds = 0.0;  // cumulative wall clock, metadata only (not CSV)
};

struct RunTrace {
  std::vector<TraceRow> rows;
  RunStatus status = RunStatus::BudgetExhausted;
  long iterations = 0;  // index of the last recorded iterate
  double final_residual = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;

  // Audit observables accumulated over the run.
  double tracking_violation_max = 0.0;  // |mean y - mean grad| / (1 + |mean grad|)
  double delta_alpha_max = 0.0;
  double alpha_max_observed = 0.0;
  double alpha_min_observed = std::numeric_limits<double>::infinity();
  // Min alpha over iterations at or after each agent's first
  // curvature-limited stepsize update.
  double alpha_min_post_bind = std::numeric_limits<double>::infinity();
  std::vector<long> first_bind_iteration;  // -1 if never bound

  // First k whose residual is <= threshold, or -1.
  long iterations_to(double threshold) const;
};

// Iterates until residual(tol), max_iters, or divergence (non-finite state
// or residual > divergence_threshold; recorded, not thrown).  Residuals are
// Frobenius norms of the stacked iterate against x_star, normalized by the
// initial error.  Deterministic given the inputs.
RunTrace run_decentralized(const ObjectiveEnsemble& ens, const MixingMatrix& w,
                           const Eigen::VectorXd& x_star, const EngineConfig& cfg,
                           const Eigen::MatrixXd* x0 = nullptr);

RunTrace run_centralized(const ObjectiveEnsemble& ens, const Eigen::VectorXd& x_star,
                         const EngineConfig& cfg, const Eigen::VectorXd* x0 = nullptr);

struct MinimizeResult {
  Eigen::VectorXd x;
  double grad_norm = std::numeric_limits<double>::infinity();
  long iterations = 0;
  bool converged = false;
};

// Centralized adaptive descent on the ensemble sum until the gradient norm
// reaches grad_tol.  Backs reference solutions for objectives without a
// closed-form minimizer.
MinimizeResult minimize_sum_adaptive(const ObjectiveEnsemble& ens, double grad_tol,
                                     long max_iters);

}  // namespace adgt

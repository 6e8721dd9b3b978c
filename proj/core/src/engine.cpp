#include "adgt/engine.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace adgt {

std::string to_string(UpdateVariant variant) {
  switch (variant) {
    case UpdateVariant::Compact: return "compact";
    case UpdateVariant::OwnStep: return "own-step";
  }
  throw std::logic_error("unknown UpdateVariant");
}

UpdateVariant update_variant_from_string(const std::string& name) {
  if (name == "compact") return UpdateVariant::Compact;
  if (name == "own-step") return UpdateVariant::OwnStep;
  throw std::invalid_argument("unknown update variant: " + name);
}

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "converged";
    case RunStatus::BudgetExhausted: return "budget_exhausted";
    case RunStatus::Diverged: return "diverged";
  }
  throw std::logic_error("unknown RunStatus");
}

RunStatus run_status_from_string(const std::string& name) {
  if (name == "converged") return RunStatus::Converged;
  if (name == "budget_exhausted") return RunStatus::BudgetExhausted;
  if (name == "diverged") return RunStatus::Diverged;
  throw std::invalid_argument("unknown run status: " + name);
}

Eigen::VectorXd SwarmState::alphas() const {
  Eigen::VectorXd a(static_cast<Eigen::Index>(steps.size()));
  for (std::size_t i = 0; i < steps.size(); ++i)
    a[static_cast<Eigen::Index>(i)] = steps[i].alpha;
  return a;
}

AgentState agent_state(const SwarmState& s, int i) {
  if (i < 0 || i >= s.n()) throw std::out_of_range("agent index out of range");
  return {s.x.row(i).transpose(), s.y.row(i).transpose(), s.grad.row(i).transpose(),
          s.steps[static_cast<std::size_t>(i)]};
}

namespace {

// Deterministic agent-parallel loop: contiguous index blocks, each agent
// touching only its own rows, so the thread count never changes results.
template <class F>
void parallel_agents(int n, int threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    const int lo = static_cast<int>(static_cast<long>(n) * t / workers);
    const int hi = static_cast<int>(static_cast<long>(n) * (t + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& worker : pool) worker.join();
}

void check_engine_config(const EngineConfig& cfg) {
  if (!(cfg.alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be positive");
  if (!(cfg.theta0 >= 0.0)) throw std::invalid_argument("theta0 must be nonnegative");
  if (!(cfg.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (cfg.max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(cfg.divergence_threshold > 0.0))
    throw std::invalid_argument("divergence threshold must be positive");
}

}  // namespace

SwarmState init_swarm(const ObjectiveEnsemble& ens, const Eigen::MatrixXd& x0,
                      const EngineConfig& cfg) {
  check_engine_config(cfg);
  validate(ens);
  const int n = ens.n();
  const int p = ens.dim();
  if (x0.rows() != n || x0.cols() != p)
    throw std::invalid_argument("init_swarm: x0 must be n-by-p");

  SwarmState s;
  s.x = x0;
  s.grad.resize(n, p);
  parallel_agents(n, cfg.threads, [&](int i) {
    const Eigen::VectorXd xi = s.x.row(i).transpose();
    s.grad.row(i) = grad_local(ens.locals[static_cast<std::size_t>(i)], xi).transpose();
  });
  s.y = s.grad;
  s.steps.assign(static_cast<std::size_t>(n),
                 StepsizeState{cfg.alpha0, cfg.theta0, cfg.gamma, cfg.policy});
  s.k = 0;
  return s;
}

SwarmState init_swarm(const ObjectiveEnsemble& ens, const Eigen::VectorXd& x0,
                      const EngineConfig& cfg) {
  if (x0.size() != ens.dim())
    throw std::invalid_argument("init_swarm: x0 has the wrong dimension");
  const Eigen::MatrixXd stacked = x0.transpose().replicate(ens.n(), 1);
  return init_swarm(ens, stacked, cfg);
}

StepOutcome step_decentralized(SwarmState& s, const MixingMatrix& w,
                               const ObjectiveEnsemble& ens, const EngineConfig& cfg) {
  const int n = s.n();
  const int p = s.dim();
  if (w.n() != n) throw std::invalid_argument("mixing matrix size mismatch");
  if (ens.n() != n) throw std::invalid_argument("ensemble size mismatch");

  const Eigen::VectorXd alphas = s.alphas();
  const Eigen::MatrixXd mixed_y = w.w * s.y;

  Eigen::MatrixXd x_new(n, p);
  if (cfg.variant == UpdateVariant::Compact) {
    const Eigen::MatrixXd descended = s.x - alphas.asDiagonal() * s.y;
    x_new.noalias() = w.w * descended;
  } else {
    const Eigen::MatrixXd mixed_x = w.w * s.x;
    x_new = mixed_x - alphas.asDiagonal() * mixed_y;
  }

  Eigen::MatrixXd grad_new(n, p);
  parallel_agents(n, cfg.threads, [&](int i) {
    const Eigen::VectorXd xi = x_new.row(i).transpose();
    grad_new.row(i) = grad_local(ens.locals[static_cast<std::size_t>(i)], xi).transpose();
  });

  // Grouped so the tracker cancels exactly at n = 1: (y - grad) + grad'.
  const Eigen::MatrixXd y_new = (mixed_y - s.grad) + grad_new;

  StepOutcome outcome;
  if (!x_new.allFinite() || !grad_new.allFinite() || !y_new.allFinite()) {
    outcome.finite = false;
    return outcome;
  }

  outcome.curvature_bound.assign(static_cast<std::size_t>(n), 0);
  const bool adapt = cfg.policy != StepsizePolicy::Fixed && !cfg.force_constant_alpha;
  if (adapt) {
    parallel_agents(n, cfg.threads, [&](int i) {
      CurvatureProbe probe;
      const Eigen::VectorXd dx = (x_new.row(i) - s.x.row(i)).transpose();
      const Eigen::VectorXd dy = (y_new.row(i) - s.y.row(i)).transpose();
      const Eigen::VectorXd dgrad = (grad_new.row(i) - s.grad.row(i)).transpose();
      probe.dx_norm = dx.norm();
      probe.dy_norm = dy.norm();
      probe.dgrad_norm = dgrad.norm();
      probe.y_norm = s.y.row(i).norm();
      const StepsizeUpdate update = update_stepsize(s.steps[static_cast<std::size_t>(i)], probe);
      s.steps[static_cast<std::size_t>(i)] = update.state;
      outcome.curvature_bound[static_cast<std::size_t>(i)] = update.curvature_bound ? 1 : 0;
    });
  }

  s.x = std::move(x_new);
  s.y = y_new;
  s.grad = std::move(grad_new);
  ++s.k;
  return outcome;
}

std::pair<Eigen::VectorXd, StepsizeState> step_centralized(const Eigen::VectorXd& x,
                                                           const ObjectiveEnsemble& ens,
                                                           const StepsizeState& step) {
  if (step.policy != StepsizePolicy::AdGD && step.policy != StepsizePolicy::Fixed)
    throw std::invalid_argument("centralized engine supports the adgd and fixed policies");
  const Eigen::VectorXd grad = ens.sum_gradient(x);
  const Eigen::VectorXd x_new = x - step.alpha * grad;
  if (step.policy == StepsizePolicy::Fixed) return {x_new, step};

  const Eigen::VectorXd grad_new = ens.sum_gradient(x_new);
  CurvatureProbe probe;
  const Eigen::VectorXd dx = x_new - x;
  const Eigen::VectorXd dgrad = grad_new - grad;
  probe.dx_norm = dx.norm();
  probe.dgrad_norm = dgrad.norm();
  probe.y_norm = grad.norm();
  return {x_new, update_adgd(step, probe).state};
}

double delta_alpha(const Eigen::VectorXd& alphas) {
  if (alphas.size() == 0) throw std::invalid_argument("delta_alpha: empty input");
  if (!(alphas.minCoeff() > 0.0))
    throw std::invalid_argument("delta_alpha: stepsizes must be positive");
  const double mean = alphas.mean();
  const double deviation = (alphas.array() - mean).matrix().norm();
  return deviation / (mean * std::sqrt(static_cast<double>(alphas.size())));
}

long RunTrace::iterations_to(double threshold) const {
  for (const auto& row : rows)
    if (row.residual <= threshold) return row.k;
  return -1;
}

namespace {

struct ResidualContext {
  Eigen::MatrixXd target;  // 1 x* stacked
  double denom = 0.0;
};

double residual_of(const Eigen::MatrixXd& x, const ResidualContext& ctx) {
  if (ctx.denom == 0.0) return 0.0;
  return (x - ctx.target).norm() / ctx.denom;
}

double consensus_norm(const Eigen::MatrixXd& m) {
  const Eigen::RowVectorXd mean = m.colwise().mean();
  return (m.rowwise() - mean).norm();
}

TraceRow snapshot_row(const SwarmState& s, const ResidualContext& ctx, double seconds) {
  TraceRow row;
  row.k = s.k;
  row.residual = residual_of(s.x, ctx);
  row.consensus_x = consensus_norm(s.x);
  row.consensus_y = consensus_norm(s.y);
  const Eigen::VectorXd alphas = s.alphas();
  row.alpha_min = alphas.minCoeff();
  row.alpha_mean = alphas.mean();
  row.alpha_max = alphas.maxCoeff();
  row.delta_alpha = delta_alpha(alphas);
  row.seconds = seconds;
  return row;
}

// Audit quantities refreshed at every recorded iterate.
void absorb_snapshot(RunTrace& trace, const SwarmState& s, const TraceRow& row) {
  const Eigen::RowVectorXd mean_y = s.y.colwise().mean();
  const Eigen::RowVectorXd mean_grad = s.grad.colwise().mean();
  const double violation = (mean_y - mean_grad).norm() / (1.0 + mean_grad.norm());
  trace.tracking_violation_max = std::max(trace.tracking_violation_max, violation);
  trace.delta_alpha_max = std::max(trace.delta_alpha_max, row.delta_alpha);
  trace.alpha_max_observed = std::max(trace.alpha_max_observed, row.alpha_max);
  trace.alpha_min_observed = std::min(trace.alpha_min_observed, row.alpha_min);
  for (std::size_t i = 0; i < s.steps.size(); ++i)
    if (trace.first_bind_iteration[i] >= 0)
      trace.alpha_min_post_bind = std::min(trace.alpha_min_post_bind, s.steps[i].alpha);
}

}  // namespace

RunTrace run_decentralized(const ObjectiveEnsemble& ens, const MixingMatrix& w,
                           const Eigen::VectorXd& x_star, const EngineConfig& cfg,
                           const Eigen::MatrixXd* x0) {
  check_engine_config(cfg);
  const int n = ens.n();
  const int p = ens.dim();
  if (x_star.size() != p) throw std::invalid_argument("x_star has the wrong dimension");

  const Eigen::MatrixXd start =
      x0 != nullptr ? *x0 : Eigen::MatrixXd::Zero(n, p).eval();
  SwarmState s = init_swarm(ens, start, cfg);

  ResidualContext ctx;
  ctx.target = x_star.transpose().replicate(n, 1);
  ctx.denom = (start - ctx.target).norm();

  RunTrace trace;
  trace.first_bind_iteration.assign(static_cast<std::size_t>(n), -1);
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  TraceRow row = snapshot_row(s, ctx, elapsed());
  trace.rows.push_back(row);
  absorb_snapshot(trace, s, row);
  trace.status = RunStatus::BudgetExhausted;
  if (row.residual <= cfg.tol) trace.status = RunStatus::Converged;

  while (trace.status == RunStatus::BudgetExhausted && s.k < cfg.max_iters) {
    const StepOutcome outcome = step_decentralized(s, w, ens, cfg);
    if (!outcome.finite) {
      trace.status = RunStatus::Diverged;
      break;
    }
    for (std::size_t i = 0; i < outcome.curvature_bound.size(); ++i)
      if (outcome.curvature_bound[i] && trace.first_bind_iteration[i] < 0)
        trace.first_bind_iteration[i] = s.k;

    row = snapshot_row(s, ctx, elapsed());
    trace.rows.push_back(row);
    absorb_snapshot(trace, s, row);

    if (row.residual <= cfg.tol)
      trace.status = RunStatus::Converged;
    else if (!std::isfinite(row.residual) || row.residual > cfg.divergence_threshold)
      trace.status = RunStatus::Diverged;
  }

  trace.iterations = s.k;
  trace.final_residual = trace.rows.back().residual;
  trace.wall_seconds = elapsed();
  return trace;
}

RunTrace run_centralized(const ObjectiveEnsemble& ens, const Eigen::VectorXd& x_star,
                         const EngineConfig& cfg, const Eigen::VectorXd* x0) {
  check_engine_config(cfg);
  validate(ens);
  if (cfg.policy != StepsizePolicy::AdGD && cfg.policy != StepsizePolicy::Fixed)
    throw std::invalid_argument("centralized engine supports the adgd and fixed policies");
  const int p = ens.dim();
  if (x_star.size() != p) throw std::invalid_argument("x_star has the wrong dimension");

  Eigen::VectorXd x = x0 != nullptr ? *x0 : Eigen::VectorXd::Zero(p).eval();
  StepsizeState step{cfg.alpha0, cfg.theta0, cfg.gamma, cfg.policy};
  const double denom = (x - x_star).norm();

  RunTrace trace;
  trace.first_bind_iteration.assign(1, -1);
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  long k = 0;
  const auto record = [&](double residual) {
    TraceRow row;
    row.k = k;
    row.residual = residual;
    row.consensus_x = 0.0;
    row.consensus_y = 0.0;
    row.alpha_min = row.alpha_mean = row.alpha_max = step.alpha;
    row.delta_alpha = 0.0;
    row.seconds = elapsed();
    trace.rows.push_back(row);
    trace.delta_alpha_max = std::max(trace.delta_alpha_max, row.delta_alpha);
    trace.alpha_max_observed = std::max(trace.alpha_max_observed, step.alpha);
    trace.alpha_min_observed = std::min(trace.alpha_min_observed, step.alpha);
    if (trace.first_bind_iteration[0] >= 0)
      trace.alpha_min_post_bind = std::min(trace.alpha_min_post_bind, step.alpha);
  };

  const auto residual_at = [&](const Eigen::VectorXd& point) {
    return denom == 0.0 ? 0.0 : (point - x_star).norm() / denom;
  };

  record(residual_at(x));
  trace.status = RunStatus::BudgetExhausted;
  if (trace.rows.back().residual <= cfg.tol) trace.status = RunStatus::Converged;

  const bool adapt = cfg.policy == StepsizePolicy::AdGD && !cfg.force_constant_alpha;
  while (trace.status == RunStatus::BudgetExhausted && k < cfg.max_iters) {
    StepsizeState effective = step;
    if (!adapt) effective.policy = StepsizePolicy::Fixed;
    auto [x_new, step_new] = step_centralized(x, ens, effective);
    if (!adapt) step_new = step;

    if (!x_new.allFinite()) {
      trace.status = RunStatus::Diverged;
      break;
    }
    // The growth branch reproduces sqrt(1+theta)*alpha bitwise, so strictly
    // below it means the curvature term was taken.
    if (adapt && trace.first_bind_iteration[0] < 0 &&
        step_new.alpha < std::sqrt(1.0 + step.theta) * step.alpha)
      trace.first_bind_iteration[0] = k + 1;

    x = std::move(x_new);
    step = step_new;
    ++k;
    record(residual_at(x));

    const double r = trace.rows.back().residual;
    if (r <= cfg.tol)
      trace.status = RunStatus::Converged;
    else if (!std::isfinite(r) || r > cfg.divergence_threshold)
      trace.status = RunStatus::Diverged;
  }

  trace.iterations = k;
  trace.final_residual = trace.rows.back().residual;
  trace.wall_seconds = elapsed();
  return trace;
}

MinimizeResult minimize_sum_adaptive(const ObjectiveEnsemble& ens, double grad_tol,
                                     long max_iters) {
  validate(ens);
  if (!(grad_tol > 0.0)) throw std::invalid_argument("gradient tolerance must be positive");

  MinimizeResult result;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ens.dim());
  Eigen::VectorXd grad = ens.sum_gradient(x);
  StepsizeState step{1e-3, 0.0, 1.0, StepsizePolicy::AdGD};

  for (long k = 0; k < max_iters; ++k) {
    const double grad_norm = grad.norm();
    if (grad_norm <= grad_tol) {
      result.x = x;
      result.grad_norm = grad_norm;
      result.iterations = k;
      result.converged = true;
      return result;
    }
    const Eigen::VectorXd x_new = x - step.alpha * grad;
    const Eigen::VectorXd grad_new = ens.sum_gradient(x_new);
    if (!x_new.allFinite() || !grad_new.allFinite()) break;

    CurvatureProbe probe;
    probe.dx_norm = (x_new - x).norm();
    probe.dgrad_norm = (grad_new - grad).norm();
    probe.y_norm = grad_norm;
    step = update_adgd(step, probe).state;
    x = x_new;
    grad = grad_new;
    result.iterations = k + 1;
  }
  result.x = x;
  result.grad_norm = grad.norm();
  result.converged = result.grad_norm <= grad_tol;
  return result;
}

}  // namespace adgt

// Round-synchronous engine: initialization, the mixing/tracking invariants,
// single-agent equivalence with centralized descent, divergence handling,
// and thread-count determinism.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "adgt/engine.hpp"
#include "adgt/mixing.hpp"
#include "adgt/objectives.hpp"
#include "adgt/topology.hpp"

using adgt::EngineConfig;
using adgt::make_quadratic_ensemble;
using adgt::metropolis_weights;
using adgt::MixingMatrix;
using adgt::ObjectiveEnsemble;
using adgt::QuadraticObjective;
using adgt::RunStatus;
using adgt::RunTrace;
using adgt::StepsizePolicy;
using adgt::SwarmState;
using adgt::UpdateVariant;

namespace {

struct QuadProblem {
  ObjectiveEnsemble ens;
  MixingMatrix mix;
  Eigen::VectorXd x_star;
};

QuadProblem desk_quadratic(int n, int p, double tau, std::uint64_t seed) {
  QuadProblem prob;
  prob.ens = make_quadratic_ensemble(n, p, std::vector<double>(static_cast<std::size_t>(n), tau),
                                     seed);
  // Small swarms need a denser draw to stay above the spanning-tree floor.
  const double ratio = n < 6 ? 0.7 : 0.35;
  prob.mix = metropolis_weights(
      adgt::build_topology(adgt::TopologyKind::Random, n, ratio, seed));
  prob.x_star = adgt::reference_minimizer(prob.ens);
  return prob;
}

EngineConfig adgt_config(double alpha0 = 1e-3) {
  EngineConfig cfg;
  cfg.policy = StepsizePolicy::AdGT;
  cfg.alpha0 = alpha0;
  cfg.max_iters = 20000;
  cfg.tol = 1e-10;
  return cfg;
}

bool rows_equal(const RunTrace& a, const RunTrace& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    const auto& ra = a.rows[i];
    const auto& rb = b.rows[i];
    if (ra.k != rb.k || ra.residual != rb.residual || ra.consensus_x != rb.consensus_x ||
        ra.consensus_y != rb.consensus_y || ra.alpha_min != rb.alpha_min ||
        ra.alpha_mean != rb.alpha_mean || ra.alpha_max != rb.alpha_max ||
        ra.delta_alpha != rb.delta_alpha)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("trackers start at the exact local gradients") {
  const QuadProblem prob = desk_quadratic(6, 4, 1.0, 42);
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(4);
  const SwarmState s = adgt::init_swarm(prob.ens, origin, adgt_config());
  REQUIRE(s.n() == 6);
  for (int i = 0; i < 6; ++i) {
    // At x = 0 the quadratic gradient is the linear term.
    const auto& q = std::get<QuadraticObjective>(prob.ens.locals[static_cast<std::size_t>(i)]);
    CHECK(s.y.row(i).transpose() == q.linear);
    CHECK(s.grad.row(i) == s.y.row(i));
    CHECK(s.x.row(i).norm() == 0.0);
  }
  // The tracking identity holds exactly at initialization.
  CHECK((s.y.colwise().mean() - s.grad.colwise().mean()).norm() == 0.0);
}

TEST_CASE("matrix and broadcast initialization agree on a shared point") {
  const QuadProblem prob = desk_quadratic(4, 4, 0.0, 7);
  Eigen::VectorXd point(4);
  point << 0.5, -1.0, 2.0, 0.0;
  const SwarmState a = adgt::init_swarm(prob.ens, point, adgt_config());
  const Eigen::MatrixXd stacked = point.transpose().replicate(4, 1);
  const SwarmState b = adgt::init_swarm(prob.ens, stacked, adgt_config());
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.grad == b.grad);
}

TEST_CASE("tracking identity is preserved by every round") {
  const QuadProblem prob = desk_quadratic(8, 6, 2.0, 3);
  EngineConfig cfg = adgt_config();
  cfg.max_iters = 500;
  cfg.tol = 1e-30;  // run the full budget
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  CHECK(trace.tracking_violation_max <= 1e-10);
}

TEST_CASE("swarm already at a consensus stationary point stays there") {
  // Identical strongly convex locals: the minimizer of each is the minimizer
  // of the sum, so x = 1 x*' with y = 0 is a fixed point of the dynamics.
  ObjectiveEnsemble ens;
  Eigen::VectorXd diag(2), lin(2);
  diag << 2.0, 1.0;
  lin << -4.0, 3.0;
  for (int i = 0; i < 4; ++i) ens.locals.emplace_back(QuadraticObjective{diag, lin});
  const Eigen::VectorXd x_star = adgt::reference_minimizer(ens);
  const MixingMatrix mix = metropolis_weights(adgt::build_topology(adgt::TopologyKind::Cycle, 4));

  EngineConfig cfg = adgt_config(0.1);
  SwarmState s = adgt::init_swarm(ens, x_star, cfg);
  CHECK(s.y.cwiseAbs().maxCoeff() < 1e-14);
  for (int k = 0; k < 25; ++k) {
    const adgt::StepOutcome out = adgt::step_decentralized(s, mix, ens, cfg);
    REQUIRE(out.finite);
  }
  for (int i = 0; i < 4; ++i)
    CHECK((s.x.row(i).transpose() - x_star).norm() < 1e-12);
}

TEST_CASE("single agent with identity mixing reproduces centralized descent") {
  ObjectiveEnsemble ens;
  Eigen::VectorXd diag(3), lin(3);
  diag << 1.0, 2.0, 4.0;
  lin << 1.0, -2.0, 0.5;
  ens.locals.emplace_back(QuadraticObjective{diag, lin});
  const Eigen::VectorXd x_star = adgt::reference_minimizer(ens);

  EngineConfig cfg;
  cfg.policy = StepsizePolicy::AdGD;
  cfg.alpha0 = 1e-2;
  cfg.max_iters = 400;
  cfg.tol = 1e-30;

  Eigen::MatrixXd w1(1, 1);
  w1 << 1.0;
  MixingMatrix mix{w1, 0.0};
  const RunTrace dec = adgt::run_decentralized(ens, mix, x_star, cfg);
  const RunTrace cen = adgt::run_centralized(ens, x_star, cfg);
  REQUIRE(dec.rows.size() == cen.rows.size());
  for (std::size_t r = 0; r < dec.rows.size(); ++r) {
    CHECK(dec.rows[r].residual == cen.rows[r].residual);
    CHECK(dec.rows[r].alpha_mean == cen.rows[r].alpha_mean);
  }
}

TEST_CASE("forcing a constant stepsize makes the adaptive run match fixed bitwise") {
  const QuadProblem prob = desk_quadratic(5, 4, 1.0, 11);
  EngineConfig adaptive = adgt_config(5e-3);
  adaptive.force_constant_alpha = true;
  adaptive.max_iters = 800;
  adaptive.tol = 1e-30;
  EngineConfig fixed = adaptive;
  fixed.policy = StepsizePolicy::Fixed;
  fixed.force_constant_alpha = false;
  const RunTrace a = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, adaptive);
  const RunTrace f = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, fixed);
  CHECK(rows_equal(a, f));
  CHECK(a.status == f.status);
  CHECK(a.final_residual == f.final_residual);
}

TEST_CASE("own-step variant differs from compact but still converges") {
  const QuadProblem prob = desk_quadratic(6, 4, 1.0, 19);
  EngineConfig compact = adgt_config();
  compact.max_iters = 20000;
  compact.tol = 1e-9;
  EngineConfig own = compact;
  own.variant = UpdateVariant::OwnStep;

  const RunTrace a = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, compact);
  const RunTrace b = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, own);
  CHECK(a.status == RunStatus::Converged);
  CHECK(b.status == RunStatus::Converged);
  CHECK_FALSE(rows_equal(a, b));
}

TEST_CASE("divergence is recorded rather than thrown") {
  // A fixed step far above 2/L on a stiff quadratic blows up immediately.
  const QuadProblem prob = desk_quadratic(5, 4, 3.0, 42);
  EngineConfig cfg;
  cfg.policy = StepsizePolicy::Fixed;
  cfg.alpha0 = 1.0;
  cfg.max_iters = 5000;
  cfg.tol = 1e-10;
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  CHECK(trace.status == RunStatus::Diverged);
  CHECK(trace.iterations < 5000);
  // Every recorded row is finite: the exploding iterate was not committed.
  for (const auto& row : trace.rows) CHECK(std::isfinite(row.residual));
}

TEST_CASE("zero-iteration budget leaves exactly the initial row") {
  const QuadProblem prob = desk_quadratic(4, 4, 1.0, 2);
  EngineConfig cfg = adgt_config();
  cfg.max_iters = 0;
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  REQUIRE(trace.rows.size() == 1);
  CHECK(trace.rows[0].k == 0);
  CHECK(trace.rows[0].residual == 1.0);
  CHECK(trace.status == RunStatus::BudgetExhausted);
  CHECK(trace.iterations == 0);
}

TEST_CASE("residuals are normalized so the first row is exactly one") {
  const QuadProblem prob = desk_quadratic(6, 4, 1.0, 23);
  EngineConfig cfg = adgt_config();
  cfg.max_iters = 50;
  cfg.tol = 1e-30;
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  CHECK(trace.rows.front().residual == 1.0);
  CHECK(trace.rows.front().consensus_x == 0.0);  // all agents start at the same point
}

TEST_CASE("runs are deterministic and independent of the thread count") {
  const QuadProblem prob = desk_quadratic(8, 6, 1.0, 31);
  EngineConfig cfg = adgt_config();
  cfg.max_iters = 300;
  cfg.tol = 1e-30;
  const RunTrace once = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  const RunTrace twice = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  CHECK(rows_equal(once, twice));

  EngineConfig threaded = cfg;
  threaded.threads = 4;
  const RunTrace multi = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, threaded);
  CHECK(rows_equal(once, multi));
}

TEST_CASE("stepsize dispersion matches its definition") {
  // 0.75/3 is exact in binary, so the deviation vector is exactly zero.
  Eigen::VectorXd equal(3);
  equal << 0.25, 0.25, 0.25;
  CHECK(adgt::delta_alpha(equal) == 0.0);
  Eigen::VectorXd near_equal(3);
  near_equal << 0.2, 0.2, 0.2;
  CHECK(adgt::delta_alpha(near_equal) < 1e-15);
  Eigen::VectorXd spread(2);
  spread << 1.0, 3.0;
  CHECK(adgt::delta_alpha(spread) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("adaptive centralized descent on a parabola locks onto half the inverse curvature") {
  // f(x) = (L/2) x^2 with L = 4: after the first curvature-limited update the
  // stepsize is exactly 1/(2L) every round.
  ObjectiveEnsemble ens;
  Eigen::VectorXd diag(1), lin(1);
  diag << 4.0;
  lin << 0.0;
  ens.locals.emplace_back(QuadraticObjective{diag, lin});
  const Eigen::VectorXd x_star = adgt::reference_minimizer(ens);

  EngineConfig cfg;
  cfg.policy = StepsizePolicy::AdGD;
  cfg.alpha0 = 1e-3;
  cfg.max_iters = 200;
  cfg.tol = 1e-30;
  Eigen::VectorXd x0(1);
  x0 << 1.0;
  const RunTrace trace = adgt::run_centralized(ens, x_star, cfg, &x0);
  bool seen_lock = false;
  for (const auto& row : trace.rows) {
    if (row.alpha_mean == 0.125) seen_lock = true;
  }
  CHECK(seen_lock);
}

TEST_CASE("first curvature bind is recorded per agent") {
  const QuadProblem prob = desk_quadratic(5, 4, 1.0, 13);
  EngineConfig cfg = adgt_config();
  cfg.max_iters = 2000;
  cfg.tol = 1e-9;
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  REQUIRE(trace.first_bind_iteration.size() == 5);
  for (const long k : trace.first_bind_iteration) {
    CHECK(k >= 0);  // starting from alpha0 = 1e-3 every agent binds quickly
    CHECK(k <= trace.iterations);
  }
  CHECK(trace.alpha_min_post_bind > 0.0);
  CHECK(trace.alpha_min_post_bind <= trace.alpha_max_observed);
  CHECK(trace.delta_alpha_max >= 0.0);
}

TEST_CASE("convergence status reports the first row under the tolerance") {
  const QuadProblem prob = desk_quadratic(6, 4, 1.0, 29);
  EngineConfig cfg = adgt_config();
  cfg.tol = 1e-8;
  cfg.max_iters = 20000;
  const RunTrace trace = adgt::run_decentralized(prob.ens, prob.mix, prob.x_star, cfg);
  REQUIRE(trace.status == RunStatus::Converged);
  CHECK(trace.final_residual <= 1e-8);
  CHECK(trace.rows.back().residual == trace.final_residual);
  CHECK(trace.iterations_to(1e-8) == trace.iterations);
  CHECK(trace.iterations_to(1e-30) == -1);
  // iterations_to finds the first crossing, which never moves backward.
  const long k2 = trace.iterations_to(1e-2);
  const long k4 = trace.iterations_to(1e-4);
  CHECK(k2 >= 0);
  CHECK(k4 >= k2);
}

// Engine throughput: synchronous rounds and stepsize updates at typical
// experiment sizes.

#include <benchmark/benchmark.h>

#include "adgt/engine.hpp"
#include "adgt/experiments.hpp"

namespace {

adgt::PreparedProblem quadratic_problem(int n, int p) {
  adgt::ExperimentConfig cfg;
  cfg.seed = 42;
  cfg.topology = {adgt::TopologyKind::Random, n, 0.35};
  cfg.objective.kind = adgt::ObjectiveKind::Quadratic;
  cfg.objective.p = p;
  cfg.objective.tau.assign(static_cast<std::size_t>(n), 1.0);
  return adgt::prepare_problem(cfg);
}

void BM_DecentralizedRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  const adgt::PreparedProblem prob = quadratic_problem(n, p);
  adgt::EngineConfig ecfg;
  ecfg.policy = adgt::StepsizePolicy::AdGT;
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(p);
  adgt::SwarmState s = adgt::init_swarm(prob.ensemble, x0, ecfg);
  for (auto _ : state) {
    adgt::step_decentralized(s, prob.mixing, prob.ensemble, ecfg);
    benchmark::DoNotOptimize(s.x);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DecentralizedRound)->Args({20, 10})->Args({100, 20});

void BM_DecentralizedRoundThreaded(benchmark::State& state) {
  const int n = 100;
  const int p = 20;
  const adgt::PreparedProblem prob = quadratic_problem(n, p);
  adgt::EngineConfig ecfg;
  ecfg.policy = adgt::StepsizePolicy::AdGT;
  ecfg.threads = static_cast<int>(state.range(0));
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(p);
  adgt::SwarmState s = adgt::init_swarm(prob.ensemble, x0, ecfg);
  for (auto _ : state) {
    adgt::step_decentralized(s, prob.mixing, prob.ensemble, ecfg);
    benchmark::DoNotOptimize(s.x);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_DecentralizedRoundThreaded)->Arg(1)->Arg(2)->Arg(4);

void BM_FullRunQuadraticDesk(benchmark::State& state) {
  const adgt::PreparedProblem prob = quadratic_problem(20, 10);
  adgt::EngineConfig ecfg;
  ecfg.policy = adgt::StepsizePolicy::AdGT;
  ecfg.max_iters = 2000;
  ecfg.tol = 1e-9;
  for (auto _ : state) {
    const adgt::RunTrace t = adgt::run_decentralized(prob.ensemble, prob.mixing, prob.x_star, ecfg);
    benchmark::DoNotOptimize(t.final_residual);
  }
}
BENCHMARK(BM_FullRunQuadraticDesk)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

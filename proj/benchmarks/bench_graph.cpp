// Graph construction and spectral costs: topology sampling, Metropolis
// weights, and the contraction-factor eigenvalue solve.

#include <benchmark/benchmark.h>

#include "adgt/mixing.hpp"
#include "adgt/topology.hpp"

namespace {

void BM_BuildRandomTopology(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 42;
  for (auto _ : state) {
    const adgt::Topology t = adgt::build_topology(adgt::TopologyKind::Random, n, 0.35, seed++);
    benchmark::DoNotOptimize(t.edges.data());
  }
}
BENCHMARK(BM_BuildRandomTopology)->Arg(16)->Arg(100)->Arg(400);

void BM_MetropolisWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adgt::Topology t = adgt::build_topology(adgt::TopologyKind::Random, n, 0.35, 42);
  for (auto _ : state) {
    const adgt::MixingMatrix w = adgt::metropolis_weights(t);
    benchmark::DoNotOptimize(w.lambda);
  }
}
BENCHMARK(BM_MetropolisWeights)->Arg(16)->Arg(100)->Arg(400);

void BM_SpectralGap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const adgt::Topology t = adgt::build_topology(adgt::TopologyKind::Random, n, 0.35, 42);
  const adgt::MixingMatrix w = adgt::metropolis_weights(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adgt::spectral_gap(w.w));
  }
}
BENCHMARK(BM_SpectralGap)->Arg(16)->Arg(100)->Arg(400);

}  // namespace

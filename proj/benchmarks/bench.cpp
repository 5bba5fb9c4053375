#include <benchmark/benchmark.h>

#include <random>

#include "cascade/belief.hpp"
#include "cascade/engine.hpp"
#include "cascade/infotheory.hpp"
#include "cascade/relinfo.hpp"

namespace {

using namespace cascade;

void BM_mutual_information(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(7);
  Matrix m(n, n, 0.0);
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(r, c) = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      sum += m(r, c);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) /= sum;
  }
  const JointDistribution joint(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mutual_information(joint));
  }
}
BENCHMARK(BM_mutual_information)->Arg(10)->Arg(100);

void BM_social_update(benchmark::State& state) {
  const std::size_t n = 10;
  const LikelihoodMatrix likelihood = LikelihoodMatrix::symmetric(n, 0.18);
  Belief belief = Belief::uniform(n);
  std::size_t action = 0;
  for (auto _ : state) {
    belief.social_update(action, likelihood);
    belief.apply_uncertainty(0.01);
    action = (action + 3) % n;
  }
  benchmark::DoNotOptimize(belief);
}
BENCHMARK(BM_social_update);

void BM_run_simulation_partial(benchmark::State& state) {
  ScenarioConfig scenario;
  scenario.n_locations = 10;
  scenario.n_turns = 1000;
  scenario.p_change = 0.01;
  scenario.agents.assign(10, AgentConfig{true, true, 0.30});
  scenario.likelihood = LikelihoodMatrix::symmetric(10, 0.18);
  std::uint64_t run = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(scenario, 1, run++));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 1000 * 10);
}
BENCHMARK(BM_run_simulation_partial);

void BM_ri_minimize(benchmark::State& state) {
  const UtilityMatrix utility = utility_treasure_matrix(10);
  const Distribution prior = Distribution::uniform(10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ri_minimize(utility, prior, 0.5, 1e-6));
  }
}
BENCHMARK(BM_ri_minimize);

}  // namespace

BENCHMARK_MAIN();

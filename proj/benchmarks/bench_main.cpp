#include <benchmark/benchmark.h>

#include <vector>

#include "ordlab/axioms.hpp"
#include "ordlab/bvn.hpp"
#include "ordlab/lp.hpp"
#include "ordlab/random.hpp"
#include "ordlab/rules.hpp"

namespace {

using namespace ordlab;

std::vector<Allocation> matrices(std::size_t count) {
  Rng rng(7);
  std::vector<Allocation> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_bistochastic(rng, 3, 6, 60));
  return out;
}

UtilityProfile sample_profile() {
  const auto orders = OrdinalPreference::all(3);
  return {grid_utility(orders[0], Rational(1, 3)), grid_utility(orders[2], Rational(2, 3)),
          grid_utility(orders[4], Rational(1, 2))};
}

void BM_Decompose(benchmark::State& state) {
  const auto xs = matrices(64);
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(decompose(xs[k++ % xs.size()]));
}
BENCHMARK(BM_Decompose);

void BM_FindDominating(benchmark::State& state) {
  const auto xs = matrices(64);
  const auto profile = sample_profile();
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_dominating(profile, xs[k++ % xs.size()]));
}
BENCHMARK(BM_FindDominating);

void BM_Rule(benchmark::State& state, Rule (*make)()) {
  const Rule rule = make();
  const auto profile = sample_profile();
  for (auto _ : state) benchmark::DoNotOptimize(rule(profile));
}
BENCHMARK_CAPTURE(BM_Rule, rsd, rsd_rule);
BENCHMARK_CAPTURE(BM_Rule, ps, ps_rule);
BENCHMARK_CAPTURE(BM_Rule, utilitarian, utilitarian_rule);

void BM_StrategyProofnessSmallGrid(benchmark::State& state) {
  CheckConfig config;
  config.mu_grid = {Rational(1, 4), Rational(3, 4)};
  const Rule rule = rsd_rule();
  for (auto _ : state) {
    const GridOutcomes grid(rule, config);
    benchmark::DoNotOptimize(check_strategy_proofness(grid, config));
  }
}
BENCHMARK(BM_StrategyProofnessSmallGrid)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "irsa/degree_dist.hpp"
#include "irsa/density_evolution.hpp"
#include "irsa/design.hpp"
#include "irsa/sic_sim.hpp"

namespace {

irsa::DegreeDistribution designed() { return irsa::truncated_exp_dist(1.73, 5); }

void BM_de_step(benchmark::State& state) {
  const irsa::EvolutionParams params{1.5, 2, designed()};
  double p = 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p = irsa::de_step(p, params) + 0.3);
    p = std::min(p, 1.0);
  }
}
BENCHMARK(BM_de_step);

void BM_run_evolution(benchmark::State& state) {
  const irsa::EvolutionParams params{1.6, 2, designed()};
  for (auto _ : state) {
    benchmark::DoNotOptimize(irsa::run_evolution(params));
  }
}
BENCHMARK(BM_run_evolution);

void BM_threshold_search(benchmark::State& state) {
  const auto dist = designed();
  for (auto _ : state) {
    benchmark::DoNotOptimize(irsa::threshold_search(dist, 2, 1e-3));
  }
}
BENCHMARK(BM_threshold_search);

void BM_sample_and_decode(benchmark::State& state) {
  const irsa::SimConfig config{designed(), 2, static_cast<int>(state.range(0)),
                               1.5, 1, 7};
  std::uint64_t trial = 0;
  for (auto _ : state) {
    const auto graph = irsa::sample_frame(config, trial++);
    benchmark::DoNotOptimize(irsa::sic_decode(graph, 2));
  }
}
BENCHMARK(BM_sample_and_decode)->Arg(100)->Arg(1000)->Arg(10000);

void BM_find_a_star(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(irsa::find_a_star({0.1, 0.01, 2}));
  }
}
BENCHMARK(BM_find_a_star);

}  // namespace

BENCHMARK_MAIN();

// Serial reference path against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include "brre/app/batch.hpp"
#include "brre/rre.hpp"

using namespace brre;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

Trajectory orbit(std::size_t n) {
  MapPoint p(2);
  p << 0.05, 0.1;
  return sample_trajectory(StandardMap(0.7), EmbeddingObservable(), p, n);
}

void BM_BuildProblem(benchmark::State& state) {
  const std::size_t K = static_cast<std::size_t>(state.range(1));
  const std::size_t T = window_count(3.0, K, 2);
  const auto u = difference_signal(orbit(T + 2 * K + 1));
  for (auto _ : state) benchmark::DoNotOptimize(build_problem(u, K, T, 0.0, mode(state)));
}

void BM_SolveFilter(benchmark::State& state) {
  const std::size_t K = static_cast<std::size_t>(state.range(1));
  const std::size_t T = window_count(3.0, K, 2);
  const auto problem = build_problem(difference_signal(orbit(T + 2 * K + 1)), K, T, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_filter(problem, mode(state)));
}

void BM_ClassifyBatch(benchmark::State& state) {
  app::RunConfig config;
  for (int i = 0; i < 32; ++i) config.seeds.push_back({0.05, 0.6 * i / 31.0});
  for (auto _ : state) benchmark::DoNotOptimize(app::classify_batch(config, mode(state)));
}

}  // namespace

BENCHMARK(BM_BuildProblem)->ArgsProduct({{0, 1}, {50, 200, 400}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveFilter)->ArgsProduct({{0, 1}, {50, 200, 400}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

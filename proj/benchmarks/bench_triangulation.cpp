#include <benchmark/benchmark.h>

#include "delo/oracle.hpp"
#include "delo/outlyingness.hpp"
#include "delo/random.hpp"
#include "delo/simulation.hpp"
#include "delo/triangulation.hpp"

namespace {

delo::PointSet cube(std::size_t k, std::size_t n) {
  delo::KeyedStream rng(k * 1000 + n, 2);
  std::vector<double> c(n * k);
  for (double& v : c) v = rng.uniform(-1.0, 1.0);
  return delo::PointSet(k, std::move(c));
}

void BM_Delaunay(benchmark::State& state) {
  const auto pts = cube(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(delo::delaunay(pts).edges().size());
}
BENCHMARK(BM_Delaunay)
    ->ArgsProduct({{2}, {100, 1000, 10000}})
    ->ArgsProduct({{3}, {100, 1000}})
    ->ArgsProduct({{4}, {100, 300}})
    ->ArgsProduct({{5}, {200}})
    ->Unit(benchmark::kMillisecond);

void BM_Score(benchmark::State& state) {
  const delo::DelaunayGraph g = delaunay(cube(2, static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(delo::score(g).scores.data());
}
BENCHMARK(BM_Score)->Arg(1000)->Arg(10000);

void BM_BruteforceOracle(benchmark::State& state) {
  const auto pts = cube(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delo::oracle::delaunay_bruteforce(pts).edges().size());
}
BENCHMARK(BM_BruteforceOracle)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_WitnessOracle(benchmark::State& state) {
  const auto pts = cube(3, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delo::oracle::witness_edges(pts).size());
}
BENCHMARK(BM_WitnessOracle)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ShellReplicate(benchmark::State& state) {
  delo::SimulationConfig cfg;
  cfg.dim = static_cast<std::size_t>(state.range(0));
  cfg.n_inliers = static_cast<std::size_t>(state.range(1));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const delo::ScoreTable t = delo::score(delo::delaunay(delo::sample_shell(cfg, r++)));
    benchmark::DoNotOptimize(t.scores.data());
  }
}
BENCHMARK(BM_ShellReplicate)->Args({3, 199})->Args({4, 299})->Args({5, 199})->Unit(benchmark::kMillisecond);

}  // namespace

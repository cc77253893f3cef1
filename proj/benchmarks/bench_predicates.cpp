#include <benchmark/benchmark.h>

#include <vector>

#include "delo/geometry.hpp"
#include "delo/random.hpp"

namespace {

std::vector<std::vector<double>> random_rows(std::size_t count, std::size_t k, std::uint64_t seed) {
  delo::KeyedStream rng(seed, 1);
  std::vector<std::vector<double>> rows(count, std::vector<double>(k));
  for (auto& r : rows)
    for (double& v : r) v = rng.uniform(-1.0, 1.0);
  return rows;
}

void BM_InSphereRandom(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto rows = random_rows(k + 2, k, 11);
  std::vector<delo::Coords> simplex(rows.begin(), rows.begin() + static_cast<long>(k + 1));
  for (auto _ : state) benchmark::DoNotOptimize(delo::in_sphere(simplex, rows.back()));
}
BENCHMARK(BM_InSphereRandom)->DenseRange(2, 5);

// Cocircular input forces the exact rational fallback.
void BM_InSphereDegenerate(benchmark::State& state) {
  const std::vector<double> a{0.1, 0.0}, b{0.0, 0.1}, c{-0.1, 0.0}, q{0.0, -0.1};
  const std::vector<delo::Coords> simplex{a, b, c};
  for (auto _ : state) benchmark::DoNotOptimize(delo::in_sphere(simplex, q));
}
BENCHMARK(BM_InSphereDegenerate);

void BM_Orient(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto rows = random_rows(k + 1, k, 12);
  std::vector<delo::Coords> simplex(rows.begin(), rows.end());
  for (auto _ : state) benchmark::DoNotOptimize(delo::orient(simplex));
}
BENCHMARK(BM_Orient)->DenseRange(2, 5);

}  // namespace

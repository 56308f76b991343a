#include <benchmark/benchmark.h>

#include "lopcut/solver.hpp"
#include "support/oracles.hpp"

using namespace lopcut;

namespace {

std::pair<std::vector<int>, std::vector<int>> fence_nodes(int m) {
  std::vector<int> is, js;
  for (int l = 1; l <= m; ++l) {
    is.push_back(l);
    js.push_back(m + l);
  }
  return {is, js};
}

void BM_BuildRelaxation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_bn(n));
}
BENCHMARK(BM_BuildRelaxation)->DenseRange(6, 12, 2);

void BM_LpSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sys = build_bn(n);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const auto objective = lop_objective(ref::fence_noise_instance(n, seed++));
    state.ResumeTiming();
    benchmark::DoNotOptimize(lp_solve(sys, objective));
  }
}
BENCHMARK(BM_LpSolve)->DenseRange(6, 9, 1)->Unit(benchmark::kMillisecond);

void BM_FenceAdjacency(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto [is, js] = fence_nodes(m);
  const auto sys = build_bn(2 * m);
  const auto x = fence_point(is, js, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(adjacent_integer_vertices(sys, x));
}
BENCHMARK(BM_FenceAdjacency)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ValidateFence(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto [is, js] = fence_nodes(m);
  const auto cut = fence_inequality(is, js, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(validate_inequality(cut, 2 * m));
}
BENCHMARK(BM_ValidateFence)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FacetDimension(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto [is, js] = fence_nodes(m);
  const auto cut = fence_inequality(is, js, 2 * m);
  for (auto _ : state) benchmark::DoNotOptimize(facet_dimension(cut, 2 * m));
}
BENCHMARK(BM_FacetDimension)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto inst = random_instance(n, 1, 0, 99);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(inst));
}
BENCHMARK(BM_BruteForce)->DenseRange(6, 9, 1)->Unit(benchmark::kMillisecond);

void BM_SolveFractional(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    state.PauseTiming();
    const auto inst = ref::fence_noise_instance(n, seed++);
    state.ResumeTiming();
    benchmark::DoNotOptimize(solve(inst));
  }
}
BENCHMARK(BM_SolveFractional)->DenseRange(6, 8, 1)->Unit(benchmark::kMillisecond);

void BM_Determinant(benchmark::State& state) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 engine(5);
  RationalMatrix m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) m(r, c) = Rational(static_cast<std::int64_t>(ref::uniform_below(engine, 7)) - 3);
  }
  for (auto _ : state) benchmark::DoNotOptimize(determinant(m));
}
BENCHMARK(BM_Determinant)->Arg(8)->Arg(16)->Arg(28)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();

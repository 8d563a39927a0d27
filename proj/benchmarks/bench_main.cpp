#include <benchmark/benchmark.h>

#include <random>

#include "equidist/discrepancy.hpp"
#include "equidist/experiments.hpp"
#include "equidist/lattice_geometry.hpp"
#include "equidist/polynomial.hpp"

namespace {

using namespace equidist;

std::vector<double> random_values(std::size_t n) {
  std::mt19937_64 rng(42);
  std::vector<double> values(n);
  for (double& v : values) v = uniform_unit(rng());
  return values;
}

void BM_ExtremeDiscrepancy(benchmark::State& state) {
  const auto values = random_values(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extreme_discrepancy(values));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExtremeDiscrepancy)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->Complexity();

void BM_EnumerateBall2d(benchmark::State& state) {
  const double radius = static_cast<double>(state.range(0));
  for (auto _ : state) {
    std::size_t count = 0;
    LatticeStream stream = enumerate_ball(2, radius);
    while (stream.next()) ++count;
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateBall2d)->Arg(50)->Arg(200);

void BM_PolynomialMod1(benchmark::State& state) {
  const auto set = GeneratorSet::builtin();
  Polynomial f(2);
  f.add_term(MultiIndex({1, 1}), ExactScalar::generator(set, "sqrt2"));
  f.add_term(MultiIndex({0, 1}), ExactScalar(1));
  const std::int64_t point[2] = {123, -77};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_mod1(f, point));
}
BENCHMARK(BM_PolynomialMod1);

void BM_GkSup(benchmark::State& state) {
  const auto degree = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(g_k_sup(0.41421356237309503, degree, 100, 32));
}
BENCHMARK(BM_GkSup)->Arg(1)->Arg(2);

}  // namespace
BENCHMARK_MAIN();

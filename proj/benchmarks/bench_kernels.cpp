#include <benchmark/benchmark.h>

#include "pgex/linalg.hpp"
#include "pgex/problems.hpp"
#include "pgex/proxops.hpp"
#include "pgex/random.hpp"

namespace {

pgex::Vector random_vector(std::size_t n, std::uint64_t seed) {
  pgex::InstanceRng rng(seed);
  pgex::Vector v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

void BM_ProjectSimplex(benchmark::State& state) {
  const pgex::Vector v = random_vector(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::project_simplex(v, 5.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectSimplex)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oNLogN);

void BM_SoftThreshold(benchmark::State& state) {
  const pgex::Vector v = random_vector(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::soft_threshold(v, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SoftThreshold)->RangeMultiplier(10)->Range(10, 100000)->Complexity(benchmark::oN);

void BM_GramSpectralNorm(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const pgex::LassoInstance inst = pgex::gen_lasso(m, 10 * m, m / 10, 3);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::gram_spectral_norm(inst.A));
}
BENCHMARK(BM_GramSpectralNorm)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SymExtremeEigs(benchmark::State& state) {
  const pgex::SimplexQpInstance inst = pgex::gen_qp(static_cast<std::size_t>(state.range(0)), 4);
  std::size_t iterations = 0;
  for (auto _ : state) {
    const auto eig = pgex::sym_extreme_eigs(inst.A);
    iterations = eig.max.iterations + eig.min.iterations;
    benchmark::DoNotOptimize(eig);
  }
  state.counters["block_iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_SymExtremeEigs)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

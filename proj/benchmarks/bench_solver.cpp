#include <benchmark/benchmark.h>

#include "pgex/experiment.hpp"
#include "pgex/objective.hpp"
#include "pgex/problems.hpp"
#include "pgex/solver.hpp"

namespace {

// One forward-backward step on a desk-scale instance of each family.
void BM_StepLasso(benchmark::State& state) {
  const pgex::CompositeObjective obj = pgex::lasso_objective(pgex::gen_lasso(50, 500, 5, 1));
  const pgex::Vector y(500, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::forward_backward_step(obj, y));
}
BENCHMARK(BM_StepLasso);

void BM_StepLogistic(benchmark::State& state) {
  const pgex::CompositeObjective obj = pgex::logistic_objective(pgex::gen_logistic(50, 500, 5, 1));
  const pgex::Vector y(501, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::forward_backward_step(obj, y));
}
BENCHMARK(BM_StepLogistic);

void BM_StepQp(benchmark::State& state) {
  const pgex::SimplexQpInstance inst = pgex::gen_qp(200, 1);
  const pgex::CompositeObjective obj = pgex::qp_objective(inst);
  const pgex::Vector y = pgex::initial_point(inst);
  for (auto _ : state) benchmark::DoNotOptimize(pgex::forward_backward_step(obj, y));
}
BENCHMARK(BM_StepQp);

// Full solver runs; arg 0 = bare loop, arg 1 = with residual and gap recording.
void BM_RunLassoRestart(benchmark::State& state) {
  const pgex::CompositeObjective obj = pgex::lasso_objective(pgex::gen_lasso(50, 500, 5, 1));
  pgex::RunOptions options;
  options.keep_iterates = false;
  options.record_residual = state.range(0) != 0;
  options.record_gap = state.range(0) != 0;
  const auto rule = pgex::TerminationRule::max_iter(200);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgex::run(obj, pgex::Vector(500, 0.0), pgex::BetaSchedule::both_restarts(500), rule, options));
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_RunLassoRestart)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RunQpPgE(benchmark::State& state) {
  const pgex::SimplexQpInstance inst = pgex::gen_qp(200, 1);
  const pgex::CompositeObjective obj = pgex::qp_objective(inst);
  const double beta = 0.98 * pgex::beta_threshold(obj.modulus_L(), obj.modulus_l());
  pgex::RunOptions options;
  options.keep_iterates = false;
  options.record_residual = false;
  const auto rule = pgex::TerminationRule::max_iter(200);
  for (auto _ : state)
    benchmark::DoNotOptimize(pgex::run(obj, pgex::initial_point(inst), pgex::BetaSchedule::constant(beta), rule, options));
  state.SetItemsProcessed(state.iterations() * 200);
}
BENCHMARK(BM_RunQpPgE)->Unit(benchmark::kMillisecond);

}  // namespace

#include "pgex/solver.hpp"

#include <cmath>
#include <string>

#include "pgex/diagnostics.hpp"

namespace pgex {

namespace {

struct RunContext {
  const CompositeObjective& obj;
  const RunOptions& options;
  bool record_residual;
  bool record_gap;
  double alpha;
};

IterateRecord make_record(const RunContext& ctx, std::size_t k, std::span<const double> x,
                          std::span<const double> x_prev, double objective, double beta, bool restart) {
  IterateRecord rec;
  rec.k = k;
  rec.objective = objective;
  rec.step_norm = distance(x, x_prev);
  rec.iterate_norm = norm2(x);
  rec.lyapunov = lyapunov_value(objective, rec.step_norm, ctx.alpha);
  rec.beta = beta;
  rec.restart = restart;
  if (ctx.record_residual) rec.residual = stationarity_residual(ctx.obj, x);
  if (ctx.record_gap) {
    const DualCertificate cert = ctx.obj.dual_certificate(x);
    rec.gap = cert.relative_gap;
    rec.feasibility_violation = cert.feasibility_violation;
    rec.dual_value = cert.dual;
  }
  return rec;
}

[[noreturn]] void fail(SolveResult&& partial, const std::string& what) {
  auto shared = std::make_shared<const SolveResult>(std::move(partial));
  throw SolveFailure(what, std::move(shared));
}

}  // namespace

SolveResult run(const CompositeObjective& obj, std::span<const double> x0, BetaSchedule schedule,
                const TerminationRule& rule, const RunOptions& options) {
  if (x0.size() != obj.dim()) {
    throw ArgumentError("run: x0 has length " + std::to_string(x0.size()) + ", expected " +
                        std::to_string(obj.dim()));
  }
  if (!obj.in_domain(x0)) throw ArgumentError("run: x0 is not in dom g");

  const double L = obj.modulus_L();
  const double l = obj.modulus_l();

  SolveResult result;
  result.threshold = beta_threshold(L, l);
  result.beta_bound = schedule.supremum();
  if (!schedule.is_fista() && result.beta_bound > result.threshold) {
    throw ArgumentError("run: constant beta " + std::to_string(result.beta_bound) + " exceeds threshold " +
                        std::to_string(result.threshold));
  }
  if (schedule.is_fista() && l > 0.0 && !options.allow_heuristic_schedule) {
    throw ArgumentError("run: FISTA-type schedules require a convex smooth part (l = 0)");
  }
  result.within_threshold = result.beta_bound <= result.threshold;
  result.strictly_below_threshold = result.beta_bound < result.threshold;

  double alpha = 0.5 * L;
  if (result.within_threshold) {
    const AlphaWindow window = alpha_window(L, l, result.beta_bound);
    alpha = window.midpoint();
    if (options.alpha) {
      if (!window.contains(*options.alpha)) {
        throw ArgumentError("run: alpha " + std::to_string(*options.alpha) + " outside [" +
                            std::to_string(window.lower) + ", " + std::to_string(window.upper) + "]");
      }
      alpha = *options.alpha;
    }
  } else if (options.alpha) {
    if (!(*options.alpha >= 0.0)) throw ArgumentError("run: alpha must be >= 0");
    alpha = *options.alpha;
  }

  if (rule.requires_dual() && !obj.has_dual()) {
    throw ConfigurationError("run: duality-gap termination requested but the objective has no dual");
  }

  const RunContext ctx{obj, options, options.record_residual || rule.requires_residual(),
                       obj.has_dual() && (options.record_gap || rule.requires_dual()), alpha};

  result.trace.alpha = alpha;
  if (const auto cap = rule.iteration_cap(); cap && *cap < 1'000'000) {
    result.trace.records.reserve(*cap + 1);
    if (options.keep_iterates) result.trace.iterates.reserve(*cap + 1);
  }

  schedule.reset();
  Vector x(x0.begin(), x0.end());
  Vector x_prev = x;
  Vector y(x.size());

  result.trace.records.push_back(make_record(ctx, 0, x, x_prev, obj.value(x), 0.0, false));
  if (options.keep_iterates) result.trace.iterates.push_back(x);

  bool restart_pending = false;
  for (std::size_t k = 0;; ++k) {
    const BetaSchedule::Step step = schedule.next_beta(restart_pending);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + step.beta * (x[i] - x_prev[i]);

    StepResult fb;
    try {
      fb = forward_backward_step(obj, y);
    } catch (const Error& e) {
      result.x_final = x;
      result.iterations = k;
      fail(std::move(result), "iteration " + std::to_string(k) + ": " + e.what());
    }
    if (!all_finite(fb.x_next)) {
      result.x_final = x;
      result.iterations = k;
      fail(std::move(result), "iteration " + std::to_string(k) + ": non-finite iterate");
    }

    restart_pending = schedule.uses_adaptive_restart() && adaptive_restart_triggered(y, fb.x_next, x);

    x_prev.swap(x);
    x = std::move(fb.x_next);

    IterateRecord rec = make_record(ctx, k + 1, x, x_prev, fb.objective_at_next, step.beta, step.restarted);
    const auto reason = check_termination(rule, rec);
    result.trace.records.push_back(std::move(rec));
    if (options.keep_iterates) result.trace.iterates.push_back(x);

    if (reason) {
      result.reason = *reason;
      result.iterations = k + 1;
      break;
    }
  }
  result.x_final = std::move(x);
  return result;
}

}  // namespace pgex

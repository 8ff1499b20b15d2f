#pragma once

#include <memory>
#include <optional>
#include <span>

#include "pgex/objective.hpp"
#include "pgex/schedule.hpp"
#include "pgex/termination.hpp"
#include "pgex/trace.hpp"

namespace pgex {

struct RunOptions {
  /// Lyapunov weight for the H column. Defaults to the midpoint of
  /// alpha_window(L, l, schedule.supremum()).
  std::optional<double> alpha;
  bool record_residual = true;
  /// Evaluate the dual certificate every iteration when the objective has one.
  bool record_gap = true;
  bool keep_iterates = true;
  /// Permit FISTA-type schedules on objectives with l > 0 (no convergence
  /// guarantee; H is then not expected to be monotone).
  bool allow_heuristic_schedule = false;
};

struct SolveResult {
  Vector x_final;
  std::size_t iterations = 0;
  TerminationReason reason = TerminationReason::kMaxIterations;
  IterateTrace trace;
  /// sqrt(L / (L + l)) for the objective.
  double threshold = 1.0;
  /// Upper bound on beta_k implied by the schedule.
  double beta_bound = 0.0;
  /// beta_bound <= threshold: the schedule is admissible and H is nonincreasing.
  bool within_threshold = true;
  /// beta_bound < threshold: the linear-rate hypothesis holds as well.
  bool strictly_below_threshold = true;
};

/// Raised when an iterate becomes non-finite; carries everything recorded so far.
class SolveFailure : public NumericalError {
 public:
  SolveFailure(const std::string& what, std::shared_ptr<const SolveResult> partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const SolveResult& partial() const noexcept { return *partial_; }

 private:
  std::shared_ptr<const SolveResult> partial_;
};

/// Proximal gradient with extrapolation:
///   y^k = x^k + beta_k (x^k - x^{k-1}),  x^{k+1} = prox_{g/L}(y^k - grad f(y^k) / L),
/// started from x^{-1} = x^0. The schedule is copied and reset before use.
SolveResult run(const CompositeObjective& obj, std::span<const double> x0, BetaSchedule schedule,
                const TerminationRule& rule, const RunOptions& options = {});

}  // namespace pgex

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pgex/trace.hpp"

namespace pgex {

/// H = F(x^k) + alpha ||x^k - x^{k-1}||^2.
inline double lyapunov_value(double objective, double step_norm, double alpha) noexcept {
  return objective + alpha * (step_norm * step_norm);
}

struct MonotoneAudit {
  bool ok = true;
  std::optional<std::size_t> first_violation;
};

/// Checks s_{k+1} <= s_k + rel_tol * max(1, |s_k|) for every k. The violation
/// index is the k of the offending pair.
MonotoneAudit audit_monotone(std::span<const double> series, double rel_tol);

struct RateFit {
  /// exp(slope): the per-iteration contraction factor of the fitted line.
  double ratio_estimate = 1.0;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  std::size_t tail_start = 0;
  std::size_t points = 0;
  /// The series hit a (numerically) zero entry and was cut there.
  bool truncated = false;
};

/// Least-squares line through log(residual_k) over the final tail_fraction of
/// the series. Entries <= 1e-300 end the usable series.
RateFit fit_linear_rate(std::span<const double> residuals, double tail_fraction = 0.5);

/// ||x^k - x_ref|| for each stored iterate.
std::vector<double> distance_to_reference(const std::vector<Vector>& iterates, std::span<const double> x_ref);

/// |F(x^k) - f_min| for each record.
std::vector<double> objective_gap_series(const IterateTrace& trace, double f_min);

/// H recomputed from the trace at an arbitrary alpha.
std::vector<double> lyapunov_series(const IterateTrace& trace, double alpha);

struct InequalityAudit {
  bool ok = true;
  std::optional<std::size_t> first_violation;
  /// Largest (lhs - rhs) seen, normalized by max(1, |reference value|).
  double worst_excess = 0.0;
  std::size_t checked = 0;
};

/// F(x^{k+1}) <= F(x^k) + ((L + l) / 2) ||x^k - y^k||^2 - (L / 2) ||x^{k+1} - x^k||^2
/// for every step in the trace, using ||x^k - y^k|| = beta_k ||x^k - x^{k-1}||.
InequalityAudit audit_descent(const IterateTrace& trace, double L, double l, double rel_tol = 1e-8);

/// H_{k+1} - H_k <= (alpha - L / 2) ||x^{k+1} - x^k||^2 + ((L + l) / 2 beta_k^2 - alpha) ||x^k - x^{k-1}||^2.
InequalityAudit audit_h_decrease(const IterateTrace& trace, double L, double l, double alpha,
                                 double rel_tol = 1e-8);

struct SquareSummabilityAudit {
  double partial_sum = 0.0;
  double first_decile_mean = 0.0;
  double last_decile_mean = 0.0;
  bool decaying = false;
};

/// sum_k ||x^{k+1} - x^k||^2 and a first-vs-last decile comparison of step norms.
SquareSummabilityAudit audit_square_summability(const IterateTrace& trace);

}  // namespace pgex

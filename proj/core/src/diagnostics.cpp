#include "pgex/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pgex/errors.hpp"

namespace pgex {

MonotoneAudit audit_monotone(std::span<const double> series, double rel_tol) {
  if (series.empty()) throw ArgumentError("audit_monotone: empty series");
  if (!(rel_tol >= 0.0)) throw ArgumentError("audit_monotone: rel_tol must be >= 0");
  for (std::size_t k = 0; k + 1 < series.size(); ++k) {
    if (series[k + 1] > series[k] + rel_tol * std::max(1.0, std::abs(series[k]))) return {false, k};
  }
  return {};
}

RateFit fit_linear_rate(std::span<const double> residuals, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 1.0) throw ArgumentError("fit_linear_rate: tail_fraction must be in (0, 1]");
  RateFit fit;
  std::size_t usable = residuals.size();
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    const double r = residuals[k];
    if (std::isnan(r) || r < 0.0) throw ArgumentError("fit_linear_rate: residuals must be nonnegative numbers");
    if (r <= 1e-300) {
      usable = k;
      fit.truncated = true;
      break;
    }
  }
  fit.tail_start = usable - static_cast<std::size_t>(std::floor(static_cast<double>(usable) * tail_fraction));
  fit.points = usable - fit.tail_start;
  if (fit.points < 10) {
    throw InsufficientDataError("fit_linear_rate: " + std::to_string(fit.points) + " tail points, need >= 10");
  }

  double mean_k = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = fit.tail_start; k < usable; ++k) {
    mean_k += static_cast<double>(k);
    mean_y += std::log(residuals[k]);
  }
  mean_k /= static_cast<double>(fit.points);
  mean_y /= static_cast<double>(fit.points);

  double skk = 0.0;
  double sky = 0.0;
  double syy = 0.0;
  for (std::size_t k = fit.tail_start; k < usable; ++k) {
    const double dk = static_cast<double>(k) - mean_k;
    const double dy = std::log(residuals[k]) - mean_y;
    skk += dk * dk;
    sky += dk * dy;
    syy += dy * dy;
  }
  fit.slope = sky / skk;
  fit.intercept = mean_y - fit.slope * mean_k;
  fit.ratio_estimate = std::exp(fit.slope);

  double ss_res = 0.0;
  for (std::size_t k = fit.tail_start; k < usable; ++k) {
    const double e = std::log(residuals[k]) - (fit.intercept + fit.slope * static_cast<double>(k));
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

std::vector<double> distance_to_reference(const std::vector<Vector>& iterates, std::span<const double> x_ref) {
  std::vector<double> out;
  out.reserve(iterates.size());
  for (const auto& x : iterates) {
    if (x.size() != x_ref.size()) throw ArgumentError("distance_to_reference: dimension mismatch");
    out.push_back(distance(x, x_ref));
  }
  return out;
}

std::vector<double> objective_gap_series(const IterateTrace& trace, double f_min) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& r : trace.records) out.push_back(std::abs(r.objective - f_min));
  return out;
}

std::vector<double> lyapunov_series(const IterateTrace& trace, double alpha) {
  std::vector<double> out;
  out.reserve(trace.size());
  for (const auto& r : trace.records) out.push_back(lyapunov_value(r.objective, r.step_norm, alpha));
  return out;
}

namespace {

void note(InequalityAudit& audit, std::size_t k, double lhs, double rhs, double reference, double rel_tol) {
  const double scale = std::max(1.0, std::abs(reference));
  const double excess = (lhs - rhs) / scale;
  audit.worst_excess = std::max(audit.worst_excess, excess);
  ++audit.checked;
  if (excess > rel_tol && audit.ok) {
    audit.ok = false;
    audit.first_violation = k;
  }
}

}  // namespace

InequalityAudit audit_descent(const IterateTrace& trace, double L, double l, double rel_tol) {
  InequalityAudit audit;
  const auto& rs = trace.records;
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
    const double extrap = rs[k + 1].beta * rs[k].step_norm;  // ||x^k - y^k||
    const double step = rs[k + 1].step_norm;                 // ||x^{k+1} - x^k||
    const double rhs = rs[k].objective + 0.5 * (L + l) * extrap * extrap - 0.5 * L * step * step;
    note(audit, k, rs[k + 1].objective, rhs, rs[k].objective, rel_tol);
  }
  return audit;
}

InequalityAudit audit_h_decrease(const IterateTrace& trace, double L, double l, double alpha, double rel_tol) {
  InequalityAudit audit;
  const auto& rs = trace.records;
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
    const double h_k = lyapunov_value(rs[k].objective, rs[k].step_norm, alpha);
    const double h_next = lyapunov_value(rs[k + 1].objective, rs[k + 1].step_norm, alpha);
    const double beta = rs[k + 1].beta;
    const double s_next = rs[k + 1].step_norm;
    const double s_prev = rs[k].step_norm;
    const double bound = (alpha - 0.5 * L) * s_next * s_next + (0.5 * (L + l) * beta * beta - alpha) * s_prev * s_prev;
    note(audit, k, h_next - h_k, bound, h_k, rel_tol);
  }
  return audit;
}

SquareSummabilityAudit audit_square_summability(const IterateTrace& trace) {
  SquareSummabilityAudit audit;
  const auto& rs = trace.records;
  for (std::size_t k = 1; k < rs.size(); ++k) audit.partial_sum += rs[k].step_norm * rs[k].step_norm;
  const std::size_t steps = rs.size() > 0 ? rs.size() - 1 : 0;
  const std::size_t decile = std::max<std::size_t>(1, steps / 10);
  if (steps == 0) return audit;
  for (std::size_t k = 1; k <= decile; ++k) audit.first_decile_mean += rs[k].step_norm;
  for (std::size_t k = rs.size() - decile; k < rs.size(); ++k) audit.last_decile_mean += rs[k].step_norm;
  audit.first_decile_mean /= static_cast<double>(decile);
  audit.last_decile_mean /= static_cast<double>(decile);
  audit.decaying = audit.last_decile_mean < audit.first_decile_mean;
  return audit;
}

}  // namespace pgex

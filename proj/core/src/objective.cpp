#include "pgex/objective.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace pgex {

CompositeObjective::CompositeObjective(std::size_t dim, double modulus_L, double modulus_l,
                                       ObjectiveParts parts)
    : dim_(dim), L_(modulus_L), l_(modulus_l), parts_(std::move(parts)) {
  if (dim_ == 0) throw ArgumentError("CompositeObjective: dimension must be positive");
  if (!(L_ > 0.0) || !std::isfinite(L_)) throw ArgumentError("CompositeObjective: L must be positive and finite");
  if (!(l_ >= 0.0) || l_ > L_) throw ArgumentError("CompositeObjective: need L >= l >= 0");
  if (!parts_.smooth_value || !parts_.smooth_grad || !parts_.nonsmooth_value || !parts_.prox) {
    throw ArgumentError("CompositeObjective: smooth value/gradient, nonsmooth value and prox are required");
  }
}

bool CompositeObjective::in_domain(std::span<const double> x) const {
  return x.size() == dim_ && all_finite(x) && std::isfinite(nonsmooth_value(x));
}

DualCertificate CompositeObjective::dual_certificate(std::span<const double> x) const {
  if (!parts_.dual) throw ConfigurationError("objective has no dual hook");
  return parts_.dual(x);
}

namespace {

void require_point(const CompositeObjective& obj, std::span<const double> x, const char* who) {
  if (x.size() != obj.dim()) {
    throw ArgumentError(std::string(who) + ": point has length " + std::to_string(x.size()) +
                        ", expected " + std::to_string(obj.dim()));
  }
  if (!all_finite(x)) throw ArgumentError(std::string(who) + ": non-finite point");
}

Vector gradient_step_point(const CompositeObjective& obj, std::span<const double> y,
                           const Vector& grad, double step, const char* who) {
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericalError(std::string(who) + ": non-finite gradient entry " + std::to_string(i) +
                           " at the current iterate");
    }
  }
  Vector v(obj.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = y[i] - step * grad[i];
  return v;
}

}  // namespace

StepResult forward_backward_step(const CompositeObjective& obj, std::span<const double> y) {
  require_point(obj, y, "forward_backward_step");
  const double step = 1.0 / obj.modulus_L();
  StepResult out;
  out.f_grad_at_y = obj.smooth_grad(y);
  const Vector v = gradient_step_point(obj, y, out.f_grad_at_y, step, "forward_backward_step");
  out.x_next = obj.prox(v, step);
  out.objective_at_next = obj.value(out.x_next);
  if (!std::isfinite(out.objective_at_next)) {
    throw NumericalError("forward_backward_step: objective not finite at the new iterate");
  }
  return out;
}

double stationarity_residual(const CompositeObjective& obj, std::span<const double> x) {
  require_point(obj, x, "stationarity_residual");
  if (!std::isfinite(obj.nonsmooth_value(x))) throw ArgumentError("stationarity_residual: point outside dom g");
  const double step = 1.0 / obj.modulus_L();
  const Vector grad = obj.smooth_grad(x);
  const Vector v = gradient_step_point(obj, x, grad, step, "stationarity_residual");
  return distance(obj.prox(v, step), x);
}

double beta_threshold(double L, double l) {
  if (!(L > 0.0)) throw ArgumentError("beta_threshold: L must be positive");
  if (!(l >= 0.0) || L < l) throw ArgumentError("beta_threshold: need L >= l >= 0");
  return std::sqrt(L / (L + l));
}

AlphaWindow alpha_window(double L, double l, double beta_bar) {
  const double threshold = beta_threshold(L, l);
  if (!(beta_bar >= 0.0) || beta_bar > threshold) {
    throw ArgumentError("alpha_window: beta_bar " + std::to_string(beta_bar) + " outside [0, " +
                        std::to_string(threshold) + "]");
  }
  // At beta_bar == threshold the two endpoints agree analytically; clamp the
  // rounding so that lower <= upper always holds.
  const double upper = 0.5 * L;
  const double lower = std::min(0.5 * (L + l) * beta_bar * beta_bar, upper);
  return {lower, upper};
}

}  // namespace pgex

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "pgex/linalg.hpp"

namespace pgex {

/// argmin_x { g(x) + ||x - v||^2 / (2 step) }.
using ProxFn = std::function<Vector(std::span<const double> v, double step)>;
using ScalarFn = std::function<double(std::span<const double>)>;
using GradientFn = std::function<Vector(std::span<const double>)>;

/// Primal/dual pair produced by a problem family's dual scaling.
struct DualCertificate {
  double primal = 0.0;
  double dual = 0.0;
  /// |F(x) - d(u)| / max{F(x), 1}
  double relative_gap = 0.0;
  /// Only families with an equality-constrained dual report this.
  std::optional<double> feasibility_violation;
  Vector u;

  /// Quantity compared against a duality-gap tolerance.
  double criterion() const noexcept {
    return feasibility_violation ? std::max(relative_gap, *feasibility_violation) : relative_gap;
  }
};

using DualFn = std::function<DualCertificate(std::span<const double>)>;

struct ObjectiveParts {
  ScalarFn smooth_value;
  GradientFn smooth_grad;
  /// Returns +infinity outside dom g; indicator functions return exactly 0 or +inf.
  ScalarFn nonsmooth_value;
  ProxFn prox;
  /// Optional duality-gap hook (convex families only).
  DualFn dual;
};

/// F = f + g where f = f1 - f2, grad f1 is L-Lipschitz, grad f2 is l-Lipschitz
/// and L >= l >= 0. Immutable after construction.
class CompositeObjective {
 public:
  CompositeObjective(std::size_t dim, double modulus_L, double modulus_l, ObjectiveParts parts);

  std::size_t dim() const noexcept { return dim_; }
  double modulus_L() const noexcept { return L_; }
  double modulus_l() const noexcept { return l_; }

  double smooth_value(std::span<const double> x) const { return parts_.smooth_value(x); }
  Vector smooth_grad(std::span<const double> x) const { return parts_.smooth_grad(x); }
  double nonsmooth_value(std::span<const double> x) const { return parts_.nonsmooth_value(x); }
  Vector prox(std::span<const double> v, double step) const { return parts_.prox(v, step); }
  double value(std::span<const double> x) const { return smooth_value(x) + nonsmooth_value(x); }

  bool in_domain(std::span<const double> x) const;

  bool has_dual() const noexcept { return static_cast<bool>(parts_.dual); }
  /// Throws ConfigurationError when no dual hook is attached.
  DualCertificate dual_certificate(std::span<const double> x) const;

 private:
  std::size_t dim_;
  double L_;
  double l_;
  ObjectiveParts parts_;
};

struct StepResult {
  Vector x_next;
  Vector f_grad_at_y;
  double objective_at_next = 0.0;
};

/// x_next = prox(y - grad f(y) / L, 1 / L), with F(x_next) evaluated eagerly.
StepResult forward_backward_step(const CompositeObjective& obj, std::span<const double> y);

/// ||prox(x - grad f(x) / L, 1 / L) - x||; zero exactly at stationary points.
double stationarity_residual(const CompositeObjective& obj, std::span<const double> x);

/// sqrt(L / (L + l)): the admissible upper bound for extrapolation coefficients.
double beta_threshold(double L, double l);

struct AlphaWindow {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint() const noexcept { return 0.5 * (lower + upper); }
  bool contains(double alpha) const noexcept { return alpha >= lower && alpha <= upper; }
};

/// [((L + l) / 2) beta_bar^2, L / 2], the range of alpha for which the
/// Lyapunov sequence F(x^k) + alpha ||x^k - x^{k-1}||^2 is nonincreasing.
AlphaWindow alpha_window(double L, double l, double beta_bar);

}  // namespace pgex

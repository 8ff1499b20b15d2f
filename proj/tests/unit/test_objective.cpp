#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "doctest.h"
#include "pgex/objective.hpp"
#include "pgex/problems.hpp"
#include "pgex/proxops.hpp"
#include "support.hpp"

using namespace pgex;

namespace {

// f(x) = 0.5 ||x - c||^2, g = 0.
CompositeObjective shifted_quadratic(Vector c) {
  const std::size_t n = c.size();
  auto center = std::make_shared<Vector>(std::move(c));
  ObjectiveParts parts;
  parts.smooth_value = [center](std::span<const double> x) {
    const double d = distance(x, *center);
    return 0.5 * d * d;
  };
  parts.smooth_grad = [center](std::span<const double> x) {
    Vector g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] - (*center)[i];
    return g;
  };
  parts.nonsmooth_value = [](std::span<const double>) { return 0.0; };
  parts.prox = [](std::span<const double> v, double) { return Vector(v.begin(), v.end()); };
  return CompositeObjective(n, 1.0, 0.0, std::move(parts));
}

CompositeObjective simplex_indicator(std::size_t n, double s) {
  ObjectiveParts parts;
  parts.smooth_value = [](std::span<const double>) { return 0.0; };
  parts.smooth_grad = [](std::span<const double> x) { return Vector(x.size(), 0.0); };
  parts.nonsmooth_value = [s](std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) {
      if (v < 0) return std::numeric_limits<double>::infinity();
      sum += v;
    }
    return std::abs(sum - s) <= 1e-9 * s ? 0.0 : std::numeric_limits<double>::infinity();
  };
  parts.prox = [s](std::span<const double> v, double) { return project_simplex(v, s); };
  return CompositeObjective(n, 1.0, 0.0, std::move(parts));
}

LassoInstance tiny_lasso() {
  LassoInstance inst;
  inst.A = DenseMatrix::identity(2);
  inst.b = {2, 0};
  inst.lambda = 1;
  return inst;
}

}  // namespace

TEST_SUITE("objective") {

TEST_CASE("forward_backward_step examples") {
  const StepResult q = forward_backward_step(shifted_quadratic({0, 0}), Vector{2, 2});
  CHECK(q.x_next == Vector{0, 0});
  CHECK(q.objective_at_next == 0.0);

  const StepResult s = forward_backward_step(simplex_indicator(2, 1.0), Vector{2, 0});
  CHECK(s.x_next == oracle::simplex_projection_enumerate({2, 0}, 1.0));

  const CompositeObjective lasso = lasso_objective(tiny_lasso());
  CHECK(lasso.modulus_L() == doctest::Approx(1.0).epsilon(1e-6));
  const StepResult l = forward_backward_step(lasso, Vector{0, 0});
  CHECK(l.x_next[0] == doctest::Approx(oracle::grid_soft_threshold(2, 1.0 / lasso.modulus_L())).epsilon(1e-4));
  CHECK(std::abs(l.x_next[1]) <= 1e-12);
}

TEST_CASE("stationarity_residual examples") {
  CHECK(stationarity_residual(shifted_quadratic({1, -2, 3}), Vector{1, -2, 3}) == 0.0);
  const CompositeObjective lasso = lasso_objective(tiny_lasso());
  CHECK(stationarity_residual(lasso, Vector{1, 0}) == doctest::Approx(0.0));
  CHECK(stationarity_residual(lasso, Vector{0, 0}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(stationarity_residual(simplex_indicator(2, 1.0), Vector{0, 0}), ArgumentError);
  CHECK_THROWS_AS(forward_backward_step(shifted_quadratic({0, 0}), Vector{1, 2, 3}), ArgumentError);

  ObjectiveParts bad;
  bad.smooth_value = [](std::span<const double>) { return 0.0; };
  bad.smooth_grad = [](std::span<const double> x) { return Vector(x.size(), NAN); };
  bad.nonsmooth_value = [](std::span<const double>) { return 0.0; };
  bad.prox = [](std::span<const double> v, double) { return Vector(v.begin(), v.end()); };
  const CompositeObjective nan_grad(2, 1.0, 0.0, bad);
  CHECK_THROWS_AS(forward_backward_step(nan_grad, Vector{0, 0}), NumericalError);

  CHECK_THROWS_AS(CompositeObjective(2, 1.0, 2.0, bad), ArgumentError);
  CHECK_THROWS_AS(CompositeObjective(2, 0.0, 0.0, bad), ArgumentError);
  CHECK_THROWS_AS(shifted_quadratic({0}).dual_certificate(Vector{0}), ConfigurationError);
}

TEST_CASE("beta_threshold") {
  CHECK(beta_threshold(4.0, 0.0) == 1.0);
  CHECK(beta_threshold(2.0, 2.0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(beta_threshold(3.0, 1.0) == doctest::Approx(0.8660254037844386));
  CHECK_THROWS_AS(beta_threshold(1.0, 2.0), ArgumentError);
}

TEST_CASE("alpha_window") {
  const AlphaWindow zero = alpha_window(3.0, 1.0, 0.0);
  CHECK(zero.lower == 0.0);
  CHECK(zero.upper == 1.5);
  const AlphaWindow collapsed = alpha_window(1.0, 0.0, 1.0);
  CHECK(collapsed.lower == 0.5);
  CHECK(collapsed.upper == 0.5);
  const AlphaWindow mid = alpha_window(2.0, 1.0, 0.5);
  CHECK(mid.lower == doctest::Approx(0.375));
  CHECK(mid.upper == 1.0);
  CHECK(mid.contains(mid.midpoint()));
  CHECK_THROWS_AS(alpha_window(1.0, 0.0, 1.01), ArgumentError);
  CHECK_THROWS_AS(alpha_window(1.0, 0.0, -0.1), ArgumentError);
  // At the threshold itself the window is a single point.
  const double t = beta_threshold(5.0, 3.0);
  const AlphaWindow edge = alpha_window(5.0, 3.0, t);
  CHECK(edge.lower <= edge.upper);
  CHECK(edge.lower == doctest::Approx(edge.upper));
}

}  // TEST_SUITE

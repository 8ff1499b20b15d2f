#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>

#include "pgex/linalg.hpp"
#include "pgex/objective.hpp"

namespace pgex {

inline constexpr double kDefaultLambda = 5.0;

/// min 0.5 ||A x - b||^2 + lambda ||x||_1
struct LassoInstance {
  DenseMatrix A;
  Vector b;
  double lambda = kDefaultLambda;
  std::uint64_t seed = 0;
  /// Planted sparse vector used to synthesize b (empty for external data).
  Vector planted;
};

/// min sum_i log(1 + exp(-b_i (a_i^T w + w0))) + lambda ||w||_1 over x = (w, w0).
struct LogisticInstance {
  DenseMatrix A;
  /// Labels in {-1, +1}, both present.
  Vector b;
  double lambda = kDefaultLambda;
  std::uint64_t seed = 0;
  Vector planted;
  /// Offset c used in b = sign(A x_hat + c e).
  double shift = 0.0;
};

/// min 0.5 x^T A x - b^T x  subject to  sum(x) = simplex_sum, x >= 0.
struct SimplexQpInstance {
  DenseMatrix A;
  Vector b;
  double simplex_sum = 1.0;
  std::uint64_t seed = 0;
};

using ProblemInstance = std::variant<LassoInstance, LogisticInstance, SimplexQpInstance>;

std::string_view family_name(const ProblemInstance& inst) noexcept;

/// Each constructor validates the instance and computes (L, l) with linalg,
/// inflating the eigenvalue estimates by (1 + 10 tol).
CompositeObjective lasso_objective(const LassoInstance& inst, PowerIterationOptions eig = {});
CompositeObjective logistic_objective(const LogisticInstance& inst, PowerIterationOptions eig = {});
CompositeObjective qp_objective(const SimplexQpInstance& inst, PowerIterationOptions eig = {});
CompositeObjective make_objective(const ProblemInstance& inst, PowerIterationOptions eig = {});

/// u = min{1, lambda / ||A^T (A x - b)||_inf} (A x - b), d(u) = -0.5 ||u||^2 - b^T u.
DualCertificate lasso_gap(const LassoInstance& inst, std::span<const double> x);
double lasso_dual_value(std::span<const double> b, std::span<const double> u);

/// D = [A | e], one row (a_i^T, 1) per sample.
DenseMatrix logistic_design(const DenseMatrix& A);

/// u = min{1, lambda / ||A^T grad p(D x)||_inf} grad p(D x). Reports the
/// relative gap and 50 |e^T u| / max{||u||, 1} as the feasibility violation.
DualCertificate logistic_gap(const LogisticInstance& inst, std::span<const double> x);

/// -sum_i [w_i log w_i + (1 - w_i) log(1 - w_i)] with w_i = -b_i u_i and 0 log 0 = 0.
/// Throws NumericalError when some w_i falls outside [0, 1].
double logistic_dual_value(std::span<const double> b, std::span<const double> u);

struct QpModuli {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double L = 0.0;
  double l = 0.0;
};

/// L = max{lambda_max, |lambda_min|}, l = max{-lambda_min, 0}, both inflated.
QpModuli qp_moduli(const DenseMatrix& A, PowerIterationOptions eig = {});

/// Draw order: A (row-major), support (partial Fisher-Yates), planted values,
/// noise. b = A x_hat + 0.01 e~.
LassoInstance gen_lasso(std::size_t m, std::size_t n, std::size_t sparsity, std::uint64_t seed,
                        double lambda = kDefaultLambda);

/// Draw order: A, support, planted values, then c ~ U[0, 1] (redrawn while
/// the labels are all equal). b = sign(A x_hat + c e) with sign(0) = +1.
LogisticInstance gen_logistic(std::size_t m, std::size_t n, std::size_t sparsity, std::uint64_t seed,
                              double lambda = kDefaultLambda);

/// Draw order: D (row-major), b, t. A = D + D^T, s = max{1, 10 t}.
SimplexQpInstance gen_qp(std::size_t n, std::uint64_t seed);

}  // namespace pgex

#include "pgex/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <string>

#include "pgex/proxops.hpp"
#include "pgex/random.hpp"

namespace pgex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

Vector residual(const DenseMatrix& A, std::span<const double> x, std::span<const double> b) {
  Vector r = mat_vec(A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// 1 / (1 + exp(t)) without overflow.
double logistic_tail(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

double relative_gap(double primal, double dual) { return std::abs(primal - dual) / std::max(primal, 1.0); }

void validate(const LassoInstance& inst) {
  if (inst.A.rows() == 0 || inst.A.cols() == 0) throw ArgumentError("LassoInstance: empty matrix");
  if (inst.b.size() != inst.A.rows()) throw ArgumentError("LassoInstance: b length must equal rows of A");
  if (!(inst.lambda > 0.0) || !std::isfinite(inst.lambda)) throw ArgumentError("LassoInstance: lambda must be positive");
  if (!all_finite(inst.b)) throw ArgumentError("LassoInstance: non-finite b");
}

void validate(const LogisticInstance& inst) {
  if (inst.A.rows() == 0 || inst.A.cols() == 0) throw ArgumentError("LogisticInstance: empty matrix");
  if (inst.b.size() != inst.A.rows()) throw ArgumentError("LogisticInstance: b length must equal rows of A");
  if (!(inst.lambda > 0.0) || !std::isfinite(inst.lambda)) throw ArgumentError("LogisticInstance: lambda must be positive");
  bool pos = false;
  bool neg = false;
  for (double bi : inst.b) {
    if (bi == 1.0) {
      pos = true;
    } else if (bi == -1.0) {
      neg = true;
    } else {
      throw ArgumentError("LogisticInstance: labels must be -1 or +1");
    }
  }
  if (!pos || !neg) throw ArgumentError("LogisticInstance: labels must not all be equal");
}

void validate(const SimplexQpInstance& inst) {
  if (inst.A.rows() == 0 || !inst.A.square()) throw ArgumentError("SimplexQpInstance: A must be square and nonempty");
  if (!is_symmetric(inst.A, 0.0)) throw ArgumentError("SimplexQpInstance: A must be exactly symmetric");
  if (inst.b.size() != inst.A.rows()) throw ArgumentError("SimplexQpInstance: b length must equal n");
  if (!(inst.simplex_sum > 0.0) || !std::isfinite(inst.simplex_sum)) throw ArgumentError("SimplexQpInstance: s must be positive");
  if (!all_finite(inst.b)) throw ArgumentError("SimplexQpInstance: non-finite b");
}

// Support of size `sparsity` drawn by a partial Fisher-Yates shuffle, then
// standard normal values in support order.
Vector planted_sparse(InstanceRng& rng, std::size_t n, std::size_t sparsity) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < sparsity; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.index(n - i));
    std::swap(perm[i], perm[j]);
  }
  Vector x(n, 0.0);
  for (std::size_t i = 0; i < sparsity; ++i) {
    double v = rng.normal();
    // An exact zero would shrink the support; it has probability zero but the
    // count is part of the contract.
    while (v == 0.0) v = rng.normal();
    x[perm[i]] = v;
  }
  return x;
}

DenseMatrix gaussian_matrix(InstanceRng& rng, std::size_t rows, std::size_t cols) {
  std::vector<double> entries(rows * cols);
  for (auto& e : entries) e = rng.normal();
  return {rows, cols, std::move(entries)};
}

}  // namespace

std::string_view family_name(const ProblemInstance& inst) noexcept {
  switch (inst.index()) {
    case 0: return "lasso";
    case 1: return "logistic";
    default: return "qp";
  }
}

// ---------------------------------------------------------------- LASSO

double lasso_dual_value(std::span<const double> b, std::span<const double> u) {
  return -0.5 * dot(u, u) - dot(b, u);
}

DualCertificate lasso_gap(const LassoInstance& inst, std::span<const double> x) {
  if (x.size() != inst.A.cols()) throw ArgumentError("lasso_gap: dimension mismatch");
  DualCertificate cert;
  Vector r = residual(inst.A, x, inst.b);
  const double atr = norm_inf(mat_t_vec(inst.A, r));
  const double scale = atr > inst.lambda ? inst.lambda / atr : 1.0;
  cert.primal = 0.5 * dot(r, r) + inst.lambda * l1_norm(x);
  for (auto& ri : r) ri *= scale;
  cert.u = std::move(r);
  cert.dual = lasso_dual_value(inst.b, cert.u);
  cert.relative_gap = relative_gap(cert.primal, cert.dual);
  return cert;
}

CompositeObjective lasso_objective(const LassoInstance& inst, PowerIterationOptions eig) {
  validate(inst);
  auto data = std::make_shared<const LassoInstance>(inst);
  const double L = inflate_modulus(gram_spectral_norm(data->A, eig).value, eig.tol);

  ObjectiveParts parts;
  parts.smooth_value = [data](std::span<const double> x) {
    const Vector r = residual(data->A, x, data->b);
    return 0.5 * dot(r, r);
  };
  parts.smooth_grad = [data](std::span<const double> x) {
    return mat_t_vec(data->A, residual(data->A, x, data->b));
  };
  parts.nonsmooth_value = [data](std::span<const double> x) { return data->lambda * l1_norm(x); };
  parts.prox = [data](std::span<const double> v, double step) { return soft_threshold(v, data->lambda * step); };
  parts.dual = [data](std::span<const double> x) { return lasso_gap(*data, x); };
  return {data->A.cols(), L, 0.0, std::move(parts)};
}

// ---------------------------------------------------------------- logistic

DenseMatrix logistic_design(const DenseMatrix& A) {
  DenseMatrix D(A.rows(), A.cols() + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) D(i, j) = A(i, j);
    D(i, A.cols()) = 1.0;
  }
  return D;
}

double logistic_dual_value(std::span<const double> b, std::span<const double> u) {
  if (b.size() != u.size()) throw ArgumentError("logistic_dual_value: length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double w = -b[i] * u[i];
    if (!(w >= 0.0 && w <= 1.0)) {
      throw NumericalError("logistic_dual_value: -b_i u_i = " + std::to_string(w) + " outside [0, 1] at i = " +
                           std::to_string(i));
    }
    if (w > 0.0) total += w * std::log(w);
    if (w < 1.0) total += (1.0 - w) * std::log1p(-w);
  }
  return -total;
}

namespace {

struct LogisticData {
  LogisticInstance inst;
  DenseMatrix D;
};

// grad p(z)_i = -b_i / (1 + exp(b_i z_i))
Vector logistic_link_gradient(std::span<const double> b, std::span<const double> z) {
  Vector g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = -b[i] * logistic_tail(b[i] * z[i]);
  return g;
}

double logistic_loss(std::span<const double> b, std::span<const double> z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += softplus(-b[i] * z[i]);
  return s;
}

double logistic_penalty(double lambda, std::span<const double> x) {
  return lambda * l1_norm(x.first(x.size() - 1));
}

DualCertificate logistic_certificate(const LogisticData& data, std::span<const double> x) {
  const auto& inst = data.inst;
  if (x.size() != data.D.cols()) throw ArgumentError("logistic_gap: dimension mismatch");
  const Vector z = mat_vec(data.D, x);
  Vector u = logistic_link_gradient(inst.b, z);
  const double atg = norm_inf(mat_t_vec(inst.A, u));
  const double scale = atg > inst.lambda ? inst.lambda / atg : 1.0;
  for (auto& ui : u) ui *= scale;

  DualCertificate cert;
  cert.primal = logistic_loss(inst.b, z) + logistic_penalty(inst.lambda, x);
  cert.dual = logistic_dual_value(inst.b, u);
  cert.relative_gap = relative_gap(cert.primal, cert.dual);
  const double sum_u = std::accumulate(u.begin(), u.end(), 0.0);
  cert.feasibility_violation = 50.0 * std::abs(sum_u) / std::max(norm2(u), 1.0);
  cert.u = std::move(u);
  return cert;
}

}  // namespace

DualCertificate logistic_gap(const LogisticInstance& inst, std::span<const double> x) {
  validate(inst);
  return logistic_certificate(LogisticData{inst, logistic_design(inst.A)}, x);
}

CompositeObjective logistic_objective(const LogisticInstance& inst, PowerIterationOptions eig) {
  validate(inst);
  auto data = std::make_shared<const LogisticData>(LogisticData{inst, logistic_design(inst.A)});
  const double L = inflate_modulus(0.25 * gram_spectral_norm(data->D, eig).value, eig.tol);

  ObjectiveParts parts;
  parts.smooth_value = [data](std::span<const double> x) {
    return logistic_loss(data->inst.b, mat_vec(data->D, x));
  };
  parts.smooth_grad = [data](std::span<const double> x) {
    return mat_t_vec(data->D, logistic_link_gradient(data->inst.b, mat_vec(data->D, x)));
  };
  parts.nonsmooth_value = [data](std::span<const double> x) { return logistic_penalty(data->inst.lambda, x); };
  parts.prox = [data](std::span<const double> v, double step) {
    // Soft-threshold the weights; the intercept (last coordinate) is unpenalized.
    Vector out = soft_threshold(v.first(v.size() - 1), data->inst.lambda * step);
    out.push_back(v.back());
    return out;
  };
  parts.dual = [data](std::span<const double> x) { return logistic_certificate(*data, x); };
  return {data->D.cols(), L, 0.0, std::move(parts)};
}

// ---------------------------------------------------------------- simplex QP

QpModuli qp_moduli(const DenseMatrix& A, PowerIterationOptions eig) {
  const ExtremeEigenvalues ev = sym_extreme_eigs(A, eig);
  QpModuli mod;
  mod.lambda_max = ev.max.value;
  mod.lambda_min = ev.min.value;
  mod.l = inflate_modulus(std::max(-mod.lambda_min, 0.0), eig.tol);
  mod.L = inflate_modulus(std::max(mod.lambda_max, std::abs(mod.lambda_min)), eig.tol);
  mod.L = std::max(mod.L, mod.l);
  return mod;
}

CompositeObjective qp_objective(const SimplexQpInstance& inst, PowerIterationOptions eig) {
  validate(inst);
  auto data = std::make_shared<const SimplexQpInstance>(inst);
  const QpModuli mod = qp_moduli(data->A, eig);

  ObjectiveParts parts;
  parts.smooth_value = [data](std::span<const double> x) {
    const Vector ax = mat_vec(data->A, x);
    return 0.5 * dot(x, ax) - dot(data->b, x);
  };
  parts.smooth_grad = [data](std::span<const double> x) {
    Vector g = mat_vec(data->A, x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] -= data->b[i];
    return g;
  };
  parts.nonsmooth_value = [data](std::span<const double> x) {
    double total = 0.0;
    for (double xi : x) {
      if (!(xi >= 0.0)) return kInf;
      total += xi;
    }
    return std::abs(total - data->simplex_sum) <= 1e-9 * data->simplex_sum ? 0.0 : kInf;
  };
  parts.prox = [data](std::span<const double> v, double) { return project_simplex(v, data->simplex_sum); };
  return {data->A.rows(), mod.L, mod.l, std::move(parts)};
}

CompositeObjective make_objective(const ProblemInstance& inst, PowerIterationOptions eig) {
  return std::visit(
      [&eig](const auto& i) -> CompositeObjective {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LassoInstance>) {
          return lasso_objective(i, eig);
        } else if constexpr (std::is_same_v<T, LogisticInstance>) {
          return logistic_objective(i, eig);
        } else {
          return qp_objective(i, eig);
        }
      },
      inst);
}

// ---------------------------------------------------------------- generators

LassoInstance gen_lasso(std::size_t m, std::size_t n, std::size_t sparsity, std::uint64_t seed, double lambda) {
  if (m == 0 || n == 0) throw ArgumentError("gen_lasso: dimensions must be positive");
  if (sparsity > n) throw ArgumentError("gen_lasso: sparsity exceeds n");
  InstanceRng rng(seed);
  LassoInstance inst;
  inst.seed = seed;
  inst.lambda = lambda;
  inst.A = gaussian_matrix(rng, m, n);
  inst.planted = planted_sparse(rng, n, sparsity);
  inst.b = mat_vec(inst.A, inst.planted);
  for (auto& bi : inst.b) bi += 0.01 * rng.normal();
  validate(inst);
  return inst;
}

LogisticInstance gen_logistic(std::size_t m, std::size_t n, std::size_t sparsity, std::uint64_t seed, double lambda) {
  if (m < 2 || n == 0) throw ArgumentError("gen_logistic: need m >= 2 and n >= 1");
  if (sparsity > n) throw ArgumentError("gen_logistic: sparsity exceeds n");
  InstanceRng rng(seed);
  LogisticInstance inst;
  inst.seed = seed;
  inst.lambda = lambda;
  inst.A = gaussian_matrix(rng, m, n);
  inst.planted = planted_sparse(rng, n, sparsity);
  const Vector score = mat_vec(inst.A, inst.planted);
  inst.b.resize(m);
  constexpr int kMaxShiftDraws = 1000;
  for (int attempt = 0; attempt < kMaxShiftDraws; ++attempt) {
    inst.shift = rng.uniform();
    bool pos = false;
    bool neg = false;
    for (std::size_t i = 0; i < m; ++i) {
      inst.b[i] = score[i] + inst.shift >= 0.0 ? 1.0 : -1.0;
      (inst.b[i] > 0.0 ? pos : neg) = true;
    }
    if (pos && neg) return inst;
  }
  throw ArgumentError("gen_logistic: could not draw mixed labels for seed " + std::to_string(seed));
}

SimplexQpInstance gen_qp(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ArgumentError("gen_qp: n must be >= 1");
  InstanceRng rng(seed);
  const DenseMatrix D = gaussian_matrix(rng, n, n);
  SimplexQpInstance inst;
  inst.seed = seed;
  inst.A = DenseMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inst.A(i, j) = D(i, j) + D(j, i);
  inst.b.resize(n);
  for (auto& bi : inst.b) bi = rng.normal();
  inst.simplex_sum = std::max(1.0, 10.0 * rng.uniform());
  return inst;
}

}  // namespace pgex

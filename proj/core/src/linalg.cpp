#include "pgex/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

namespace pgex {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw ArgumentError("DenseMatrix: entries length " + std::to_string(data_.size()) +
                        " does not match " + std::to_string(rows_) + "x" +
                        std::to_string(cols_));
  }
  if (!all_finite(data_)) throw ArgumentError("DenseMatrix: non-finite entry");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ArgumentError("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite(data_)) throw ArgumentError("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

DenseMatrix DenseMatrix::diagonal(std::span<const double> diag) {
  DenseMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("distance: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

Vector mat_vec(const DenseMatrix& m, std::span<const double> v) {
  if (v.size() != m.cols()) {
    throw ArgumentError("mat_vec: vector length " + std::to_string(v.size()) +
                        " != matrix cols " + std::to_string(m.cols()));
  }
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = dot(m.row(i), v);
  return out;
}

Vector mat_t_vec(const DenseMatrix& m, std::span<const double> v) {
  if (v.size() != m.rows()) {
    throw ArgumentError("mat_t_vec: vector length " + std::to_string(v.size()) +
                        " != matrix rows " + std::to_string(m.rows()));
  }
  Vector out(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double vi = v[i];
    if (vi == 0.0) continue;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += r[j] * vi;
  }
  return out;
}

bool is_symmetric(const DenseMatrix& m, double tol) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

double inflate_modulus(double estimate, double tol) { return estimate * (1.0 + 10.0 * tol); }

namespace {

// Width of the iterated block. Convergence of the leading Ritz pair is governed
// by the gap between the first and (kBlockWidth + 1)-th eigenvalues, so a
// near-degenerate top pair does not stall the iteration.
constexpr std::size_t kBlockWidth = 4;

// Applies the operator to every column of a block: out[j] = B in[j].
using Operator = std::function<void(const std::vector<Vector>&, std::vector<Vector>&)>;

// out[j] = m in[j], streaming each row of m once for the whole block.
void mat_block(const DenseMatrix& m, const std::vector<Vector>& in, std::vector<Vector>& out) {
  const std::size_t p = in.size();
  if (p == kBlockWidth) {
    // Fixed-width path: one pass over the row feeds four accumulators.
    const double* c0 = in[0].data();
    const double* c1 = in[1].data();
    const double* c2 = in[2].data();
    const double* c3 = in[3].data();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto row = m.row(i);
      double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
      for (std::size_t t = 0; t < row.size(); ++t) {
        const double r = row[t];
        a0 += r * c0[t];
        a1 += r * c1[t];
        a2 += r * c2[t];
        a3 += r * c3[t];
      }
      out[0][i] = a0;
      out[1][i] = a1;
      out[2][i] = a2;
      out[3][i] = a3;
    }
    return;
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < row.size(); ++t) acc += row[t] * in[j][t];
      out[j][i] = acc;
    }
  }
}

// out[j] = m^T in[j].
void mat_t_block(const DenseMatrix& m, const std::vector<Vector>& in, std::vector<Vector>& out) {
  for (auto& col : out) std::fill(col.begin(), col.end(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    for (std::size_t j = 0; j < in.size(); ++j) {
      const double c = in[j][i];
      if (c == 0.0) continue;
      for (std::size_t t = 0; t < row.size(); ++t) out[j][t] += c * row[t];
    }
  }
}

// Fixed pseudo-random vector (splitmix64 stream keyed by `stream`).
Vector scrambled_vector(std::size_t n, std::uint64_t stream) {
  std::uint64_t state = 0x9E3779B97F4A7C15ULL * (stream + 1);
  Vector v(n);
  for (auto& x : v) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    x = static_cast<double>(z >> 11) * 0x1.0p-53 - 0.5;
  }
  return v;
}

// Modified Gram-Schmidt, applied twice. Columns that collapse (rank-deficient
// images) are replaced by fresh fixed pseudo-random directions.
void orthonormalize(std::vector<Vector>& cols, std::uint64_t& refill_stream) {
  const std::size_t n = cols.front().size();
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int attempt = 0;; ++attempt) {
      const double before = norm2(cols[j]);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < j; ++i) {
          const double c = dot(cols[i], cols[j]);
          for (std::size_t t = 0; t < n; ++t) cols[j][t] -= c * cols[i][t];
        }
      }
      const double after = norm2(cols[j]);
      if (after > 1e-10 * before && after > 0.0) {
        for (auto& x : cols[j]) x /= after;
        break;
      }
      if (attempt > 8) throw NumericalError("power iteration: cannot complete an orthonormal block");
      cols[j] = scrambled_vector(n, refill_stream++);
    }
  }
}

// Cyclic Jacobi on a small dense symmetric matrix (row-major p x p). Returns
// eigenvalues in descending order and the matching eigenvectors as columns.
void small_symmetric_eigen(std::vector<double> a, std::size_t p, std::vector<double>& values,
                           std::vector<double>& vectors) {
  vectors.assign(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) vectors[i * p + i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j) off += a[i * p + j] * a[i * p + j];
    if (off < 1e-300) break;
    for (std::size_t q = 0; q < p; ++q) {
      for (std::size_t r = q + 1; r < p; ++r) {
        const double apq = a[q * p + r];
        if (apq == 0.0) continue;
        const double theta = (a[r * p + r] - a[q * p + q]) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < p; ++k) {
          const double akq = a[k * p + q];
          const double akr = a[k * p + r];
          a[k * p + q] = c * akq - s * akr;
          a[k * p + r] = s * akq + c * akr;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double aqk = a[q * p + k];
          const double ark = a[r * p + k];
          a[q * p + k] = c * aqk - s * ark;
          a[r * p + k] = s * aqk + c * ark;
        }
        for (std::size_t k = 0; k < p; ++k) {
          const double vkq = vectors[k * p + q];
          const double vkr = vectors[k * p + r];
          vectors[k * p + q] = c * vkq - s * vkr;
          vectors[k * p + r] = s * vkq + c * vkr;
        }
      }
    }
  }
  std::vector<std::size_t> order(p);
  for (std::size_t i = 0; i < p; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&a, p](std::size_t x, std::size_t y) { return a[x * p + x] > a[y * p + y]; });
  values.resize(p);
  std::vector<double> sorted(p * p);
  for (std::size_t j = 0; j < p; ++j) {
    values[j] = a[order[j] * p + order[j]];
    for (std::size_t k = 0; k < p; ++k) sorted[k * p + j] = vectors[k * p + order[j]];
  }
  vectors = std::move(sorted);
}

// Block power iteration (subspace iteration with Rayleigh-Ritz) for the
// dominant eigenvalue of a positive semidefinite operator. The start block is
// the normalized all-ones vector followed by fixed pseudo-random columns, so
// the result is deterministic. Stops once the leading Ritz pair satisfies
// ||B u - theta u|| <= tol.
EigenEstimate dominant_psd(const Operator& op, std::size_t n, const PowerIterationOptions& opts, const char* label) {
  if (!(opts.tol > 0.0)) throw ArgumentError(std::string(label) + ": tol must be positive");
  if (n == 0) throw ArgumentError(std::string(label) + ": empty operator");
  const std::size_t p = std::min(n, kBlockWidth);

  std::uint64_t stream = 0;
  std::vector<Vector> basis;
  basis.push_back(Vector(n, 1.0));
  while (basis.size() < p) basis.push_back(scrambled_vector(n, stream++));
  orthonormalize(basis, stream);

  std::vector<Vector> image(p, Vector(n));
  std::vector<double> h(p * p), values, rotation;
  EigenEstimate est;
  for (std::size_t it = 1; it <= opts.max_iter; ++it) {
    op(basis, image);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) {
        const double v = 0.5 * (dot(basis[i], image[j]) + dot(basis[j], image[i]));
        h[i * p + j] = v;
        h[j * p + i] = v;
      }
    small_symmetric_eigen(h, p, values, rotation);

    // Rotate both blocks onto the Ritz basis; column 0 is the leading pair.
    std::vector<Vector> rotated_basis(p, Vector(n, 0.0));
    std::vector<Vector> rotated_image(p, Vector(n, 0.0));
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < p; ++k) {
        const double q = rotation[k * p + j];
        if (q == 0.0) continue;
        for (std::size_t t = 0; t < n; ++t) {
          rotated_basis[j][t] += q * basis[k][t];
          rotated_image[j][t] += q * image[k][t];
        }
      }
    const double theta = values[0];
    if (!std::isfinite(theta)) throw NumericalError(std::string(label) + ": non-finite Ritz value");
    double r2 = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double d = rotated_image[0][t] - theta * rotated_basis[0][t];
      r2 += d * d;
    }
    est = {theta, std::sqrt(r2 / dot(rotated_basis[0], rotated_basis[0])), it};
    if (est.residual <= opts.tol) return est;
    if (norm2(rotated_image[0]) == 0.0) return {0.0, 0.0, it};

    basis = std::move(rotated_image);
    orthonormalize(basis, stream);
  }
  throw ConvergenceError(std::string(label) + ": no convergence within " + std::to_string(opts.max_iter) +
                             " iterations (residual " + std::to_string(est.residual) + ")",
                         est);
}

// Rough spectral radius of a symmetric matrix via the Rayleigh quotient of m^2;
// monotone from below, stopped once it stabilizes to 1e-3 relative.
double spectral_radius_hint(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  double best = 0.0;
  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Vector probe = scrambled_vector(n, 97);
  for (std::size_t i = 0; i < n; ++i) v[i] += probe[i] / std::sqrt(static_cast<double>(n));
  const double nv = norm2(v);
  for (auto& x : v) x /= nv;
  double prev = -1.0;
  for (int it = 0; it < 1000; ++it) {
    const Vector w = mat_vec(m, v);
    const double q = dot(w, w);  // v^T m^2 v with ||v|| = 1
    best = std::max(best, q);
    const double nw = std::sqrt(q);
    if (nw == 0.0) break;
    if (prev >= 0.0 && std::abs(q - prev) <= 1e-3 * q) break;
    prev = q;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  return std::sqrt(best);
}

}  // namespace

EigenEstimate gram_spectral_norm(const DenseMatrix& m, PowerIterationOptions opts) {
  std::vector<Vector> scratch;
  const auto op = [&m, &scratch](const std::vector<Vector>& in, std::vector<Vector>& out) {
    scratch.resize(in.size(), Vector(m.rows()));
    mat_block(m, in, scratch);
    mat_t_block(m, scratch, out);
  };
  return dominant_psd(op, m.cols(), opts, "gram_spectral_norm");
}

ExtremeEigenvalues sym_extreme_eigs(const DenseMatrix& m, PowerIterationOptions opts) {
  if (!m.square()) throw ArgumentError("sym_extreme_eigs: matrix is not square");
  if (!is_symmetric(m, 1e-12)) throw ArgumentError("sym_extreme_eigs: matrix is not symmetric");
  const std::size_t n = m.rows();

  // m + cI is positive semidefinite once c >= spectral radius, so its dominant
  // eigenvalue is lambda_max + c rather than whichever extreme has larger modulus.
  // The hint is a lower estimate; the shift is verified afterwards and enlarged
  // if it turned out too small.
  double shift = 1.05 * spectral_radius_hint(m);
  for (int attempt = 0;; ++attempt) {
    const auto upper = [&m, shift](const std::vector<Vector>& in, std::vector<Vector>& out) {
      mat_block(m, in, out);
      for (std::size_t j = 0; j < in.size(); ++j)
        for (std::size_t i = 0; i < in[j].size(); ++i) out[j][i] += shift * in[j][i];
    };
    EigenEstimate top = dominant_psd(upper, n, opts, "sym_extreme_eigs(max)");
    top.value -= shift;

    const double sigma = top.value;
    const auto lower = [&m, sigma](const std::vector<Vector>& in, std::vector<Vector>& out) {
      mat_block(m, in, out);
      for (std::size_t j = 0; j < in.size(); ++j)
        for (std::size_t i = 0; i < in[j].size(); ++i) out[j][i] = sigma * in[j][i] - out[j][i];
    };
    EigenEstimate bottom = dominant_psd(lower, n, opts, "sym_extreme_eigs(min)");
    bottom.value = sigma - bottom.value;

    const double radius = std::max(std::abs(top.value), std::abs(bottom.value));
    if (shift >= radius || attempt == 2) return {top, bottom};
    shift = 1.05 * radius;
  }
}

}  // namespace pgex

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pgex/errors.hpp"

namespace pgex {

using Vector = std::vector<double>;

/// Dense row-major matrix. Entries are required to be finite.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix zero(std::size_t rows, std::size_t cols);
  static DenseMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> entries() const noexcept { return data_; }

  DenseMatrix transpose() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Small BLAS-1 helpers. All of them require equal lengths (checked by callers).
double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double distance(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> v);

/// m * v. Throws ArgumentError when v.size() != m.cols().
Vector mat_vec(const DenseMatrix& m, std::span<const double> v);

/// m^T * v. Throws ArgumentError when v.size() != m.rows().
Vector mat_t_vec(const DenseMatrix& m, std::span<const double> v);

bool is_symmetric(const DenseMatrix& m, double tol = 1e-12);

struct EigenEstimate {
  double value = 0.0;
  /// ||A v - value v|| / ||v|| at the returned vector.
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Thrown when power iteration exhausts its budget; carries the best estimate.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, EigenEstimate best)
      : Error(what), best_(best) {}
  const EigenEstimate& best() const noexcept { return best_; }

 private:
  EigenEstimate best_;
};

struct PowerIterationOptions {
  double tol = 1e-8;
  std::size_t max_iter = 5000;
};

/// lambda_max(m^T m) by power iteration on v -> m^T (m v).
EigenEstimate gram_spectral_norm(const DenseMatrix& m, PowerIterationOptions opts = {});

struct ExtremeEigenvalues {
  EigenEstimate max;
  EigenEstimate min;
};

/// (lambda_max, lambda_min) of a symmetric matrix. lambda_min comes from the
/// shifted operator (lambda_max I - m).
ExtremeEigenvalues sym_extreme_eigs(const DenseMatrix& m, PowerIterationOptions opts = {});

/// Estimates feed step sizes; this inflates a nonnegative estimate by
/// (1 + 10 tol) so that 1/L stays a valid step despite estimation error.
double inflate_modulus(double estimate, double tol);

}  // namespace pgex

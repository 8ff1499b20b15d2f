#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pgex/linalg.hpp"

namespace testing {

inline std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline pgex::DenseMatrix gaussian_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  return pgex::DenseMatrix(rows, cols, gaussian_vector(rng, rows * cols));
}

inline oracle::Mat to_rows(const pgex::DenseMatrix& m) {
  oracle::Mat out(m.rows(), oracle::Vec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace testing

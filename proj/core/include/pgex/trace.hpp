#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pgex/linalg.hpp"

namespace pgex {

/// One row of the per-iteration record stream. Record k describes x^k; the
/// coefficient stored with it is the beta_{k-1} that produced x^k (0 for k = 0).
struct IterateRecord {
  std::size_t k = 0;
  double objective = 0.0;     // F(x^k)
  double lyapunov = 0.0;      // H_{k,alpha} = F(x^k) + alpha ||x^k - x^{k-1}||^2
  double step_norm = 0.0;     // ||x^k - x^{k-1}||
  double iterate_norm = 0.0;  // ||x^k||
  std::optional<double> residual;
  std::optional<double> gap;
  std::optional<double> feasibility_violation;
  std::optional<double> dual_value;
  double beta = 0.0;
  bool restart = false;
};

struct IterateTrace {
  double alpha = 0.0;
  std::vector<IterateRecord> records;
  /// x^0, x^1, ... when iterate retention is enabled; empty otherwise.
  std::vector<Vector> iterates;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  const IterateRecord& back() const { return records.back(); }

  std::vector<double> objective_column() const;
  std::vector<double> lyapunov_column() const;
  std::vector<double> step_norm_column() const;
  std::vector<double> beta_column() const;
  /// Largest beta actually used (the empirical beta_bar).
  double max_beta() const;
};

}  // namespace pgex

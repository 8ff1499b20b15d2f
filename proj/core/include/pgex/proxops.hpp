#pragma once

#include <span>

#include "pgex/linalg.hpp"

namespace pgex {

/// Componentwise prox of t*||.||_1: sign(v_i) * max(|v_i| - t, 0), with sign(0) = 0.
Vector soft_threshold(std::span<const double> v, double t);

/// Euclidean projection onto {x : sum(x) = s, x >= 0}. The result is exactly
/// nonnegative and sums to s within 1e-12 * s.
Vector project_simplex(std::span<const double> v, double s);

}  // namespace pgex

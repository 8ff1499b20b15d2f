#include "pgex/proxops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace pgex {

Vector soft_threshold(std::span<const double> v, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ArgumentError("soft_threshold: threshold must be finite and >= 0");
  if (!all_finite(v)) throw ArgumentError("soft_threshold: non-finite input");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]) - t;
    out[i] = mag > 0.0 ? std::copysign(mag, v[i]) : 0.0;
  }
  return out;
}

// Sort-based threshold method: with u sorted descending, the pivot rho is the
// largest index with u_rho - (sum_{j<=rho} u_j - s) / rho > 0.
Vector project_simplex(std::span<const double> v, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ArgumentError("project_simplex: s must be finite and > 0");
  if (!all_finite(v)) throw ArgumentError("project_simplex: non-finite input");
  const std::size_t n = v.size();
  if (n == 0) throw ArgumentError("project_simplex: empty vector");

  Vector u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double prefix = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    prefix += u[j];
    const double candidate = (prefix - s) / static_cast<double>(j + 1);
    if (u[j] - candidate > 0.0) tau = candidate;
  }

  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(v[i] - tau, 0.0);

  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (std::abs(total - s) > 1e-12 * s && total > 0.0) {
    const double scale = s / total;
    for (auto& x : out) x *= scale;
  }
  return out;
}

}  // namespace pgex

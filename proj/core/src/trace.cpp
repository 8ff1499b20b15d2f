#include "pgex/trace.hpp"

#include <algorithm>

namespace pgex {

namespace {

template <class Proj>
std::vector<double> column(const std::vector<IterateRecord>& records, Proj proj) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(proj(r));
  return out;
}

}  // namespace

std::vector<double> IterateTrace::objective_column() const {
  return column(records, [](const IterateRecord& r) { return r.objective; });
}

std::vector<double> IterateTrace::lyapunov_column() const {
  return column(records, [](const IterateRecord& r) { return r.lyapunov; });
}

std::vector<double> IterateTrace::step_norm_column() const {
  return column(records, [](const IterateRecord& r) { return r.step_norm; });
}

std::vector<double> IterateTrace::beta_column() const {
  return column(records, [](const IterateRecord& r) { return r.beta; });
}

double IterateTrace::max_beta() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, r.beta);
  return m;
}

}  // namespace pgex

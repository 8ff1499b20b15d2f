#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "pgex/trace.hpp"

namespace pgex {

enum class TerminationReason {
  kMaxIterations,
  kSuccessiveChange,
  kDualityGap,
  kResidual,
};

std::string_view to_string(TerminationReason reason) noexcept;

/// Stopping test evaluated against the latest trace record.
class TerminationRule {
 public:
  struct MaxIter {
    std::size_t n = 5000;
  };
  /// ||x^k - x^{k-1}|| / max{||x^k||, 1} <= tol
  struct SuccessiveChange {
    double tol = 1e-6;
  };
  /// Relative duality gap (and, where reported, dual feasibility violation) <= tol
  struct DualityGap {
    double tol = 1e-6;
  };
  /// Stationarity residual <= tol
  struct Residual {
    double tol = 1e-6;
  };
  struct AllOf {
    std::vector<TerminationRule> rules;
  };
  struct AnyOf {
    std::vector<TerminationRule> rules;
  };
  using Variant = std::variant<MaxIter, SuccessiveChange, DualityGap, Residual, AllOf, AnyOf>;

  explicit TerminationRule(Variant v);

  static TerminationRule max_iter(std::size_t n) { return TerminationRule(MaxIter{n}); }
  static TerminationRule successive_change(double tol) { return TerminationRule(SuccessiveChange{tol}); }
  static TerminationRule duality_gap(double tol) { return TerminationRule(DualityGap{tol}); }
  static TerminationRule residual(double tol) { return TerminationRule(Residual{tol}); }
  static TerminationRule all_of(std::vector<TerminationRule> rules) { return TerminationRule(AllOf{std::move(rules)}); }
  static TerminationRule any_of(std::vector<TerminationRule> rules) { return TerminationRule(AnyOf{std::move(rules)}); }

  const Variant& variant() const noexcept { return variant_; }

  bool requires_dual() const;
  bool requires_residual() const;
  /// Smallest MaxIter reachable through the rule tree, if any.
  std::optional<std::size_t> iteration_cap() const;

 private:
  Variant variant_;
};

/// Evaluates the rule on the latest record (k >= 1). For AnyOf the first
/// firing child decides the reason; for AllOf the first child does.
std::optional<TerminationReason> check_termination(const TerminationRule& rule, const IterateRecord& latest);

}  // namespace pgex

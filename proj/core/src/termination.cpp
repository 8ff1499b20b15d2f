#include "pgex/termination.hpp"

#include <algorithm>
#include <cmath>

#include "pgex/errors.hpp"

namespace pgex {

std::string_view to_string(TerminationReason reason) noexcept {
  switch (reason) {
    case TerminationReason::kMaxIterations: return "max_iterations";
    case TerminationReason::kSuccessiveChange: return "successive_change";
    case TerminationReason::kDualityGap: return "duality_gap";
    case TerminationReason::kResidual: return "residual";
  }
  return "unknown";
}

namespace {

void require_positive(double tol, const char* what) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ArgumentError(std::string(what) + ": tolerance must be positive");
}

}  // namespace

TerminationRule::TerminationRule(Variant v) : variant_(std::move(v)) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, MaxIter>) {
          if (r.n == 0) throw ArgumentError("MaxIter: n must be >= 1");
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          if (r.rules.empty()) throw ArgumentError("composite termination rule needs at least one child");
        } else {
          require_positive(r.tol, "termination rule");
        }
      },
      variant_);
}

bool TerminationRule::requires_dual() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DualityGap>) {
          return true;
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          return std::any_of(r.rules.begin(), r.rules.end(), [](const auto& c) { return c.requires_dual(); });
        } else {
          return false;
        }
      },
      variant_);
}

bool TerminationRule::requires_residual() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Residual>) {
          return true;
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          return std::any_of(r.rules.begin(), r.rules.end(), [](const auto& c) { return c.requires_residual(); });
        } else {
          return false;
        }
      },
      variant_);
}

std::optional<std::size_t> TerminationRule::iteration_cap() const {
  return std::visit(
      [](const auto& r) -> std::optional<std::size_t> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, MaxIter>) {
          return r.n;
        } else if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
          std::optional<std::size_t> cap;
          for (const auto& c : r.rules) {
            if (auto cc = c.iteration_cap()) cap = cap ? std::min(*cap, *cc) : *cc;
          }
          return cap;
        } else {
          return std::nullopt;
        }
      },
      variant_);
}

std::optional<TerminationReason> check_termination(const TerminationRule& rule, const IterateRecord& latest) {
  if (latest.k == 0) throw ArgumentError("check_termination: needs at least one completed iteration");
  using R = TerminationRule;
  return std::visit(
      [&latest](const auto& r) -> std::optional<TerminationReason> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, R::MaxIter>) {
          if (latest.k >= r.n) return TerminationReason::kMaxIterations;
        } else if constexpr (std::is_same_v<T, R::SuccessiveChange>) {
          if (latest.step_norm / std::max(latest.iterate_norm, 1.0) <= r.tol) return TerminationReason::kSuccessiveChange;
        } else if constexpr (std::is_same_v<T, R::DualityGap>) {
          if (!latest.gap) throw ConfigurationError("DualityGap rule evaluated on a record without a duality gap");
          const double criterion = std::max(*latest.gap, latest.feasibility_violation.value_or(0.0));
          if (criterion <= r.tol) return TerminationReason::kDualityGap;
        } else if constexpr (std::is_same_v<T, R::Residual>) {
          if (!latest.residual) throw ConfigurationError("Residual rule evaluated on a record without a residual");
          if (*latest.residual <= r.tol) return TerminationReason::kResidual;
        } else if constexpr (std::is_same_v<T, R::AnyOf>) {
          for (const auto& c : r.rules) {
            if (auto reason = check_termination(c, latest)) return reason;
          }
        } else if constexpr (std::is_same_v<T, R::AllOf>) {
          std::optional<TerminationReason> first;
          for (const auto& c : r.rules) {
            auto reason = check_termination(c, latest);
            if (!reason) return std::nullopt;
            if (!first) first = reason;
          }
          return first;
        }
        return std::nullopt;
      },
      rule.variant());
}

}  // namespace pgex

#include "pgex/schedule.hpp"

#include <cmath>

#include "pgex/errors.hpp"

namespace pgex {

namespace {

double next_theta(double theta) { return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta)); }

// Beyond this many steps the fixed-restart supremum is reported as 1.
constexpr std::size_t kSupremumSimulationCap = 1'000'000;

}  // namespace

BetaSchedule::BetaSchedule(Variant v) : variant_(v) {
  if (const auto* c = std::get_if<Constant>(&variant_)) {
    if (!(c->beta >= 0.0) || !std::isfinite(c->beta)) throw ArgumentError("BetaSchedule: constant beta must be finite and >= 0");
  }
  if (restart_interval() == 0) throw ArgumentError("BetaSchedule: restart interval must be >= 1");
}

bool BetaSchedule::is_fista() const noexcept { return !std::holds_alternative<Constant>(variant_); }

bool BetaSchedule::uses_adaptive_restart() const noexcept {
  return std::holds_alternative<FistaAdaptiveRestart>(variant_) ||
         std::holds_alternative<FistaBothRestarts>(variant_);
}

std::size_t BetaSchedule::restart_interval() const noexcept {
  if (const auto* f = std::get_if<FistaFixedRestart>(&variant_)) return f->interval;
  if (const auto* b = std::get_if<FistaBothRestarts>(&variant_)) return b->interval;
  return kNeverRestart;
}

void BetaSchedule::reset() noexcept {
  theta_prev_ = 1.0;
  theta_curr_ = 1.0;
  since_restart_ = 0;
}

BetaSchedule::Step BetaSchedule::next_beta(bool restart_signal) {
  if (const auto* c = std::get_if<Constant>(&variant_)) return {c->beta, false};

  Step step;
  const std::size_t interval = restart_interval();
  const bool expired = interval != kNeverRestart && since_restart_ >= interval;
  if (restart_signal || expired) {
    reset();
    step.restarted = true;
  }
  step.beta = (theta_prev_ - 1.0) / theta_curr_;
  theta_prev_ = theta_curr_;
  theta_curr_ = next_theta(theta_curr_);
  ++since_restart_;
  return step;
}

double BetaSchedule::supremum() const {
  if (const auto* c = std::get_if<Constant>(&variant_)) return c->beta;
  const std::size_t interval = restart_interval();
  if (interval == kNeverRestart || interval > kSupremumSimulationCap) return 1.0;
  // beta_k increases within a restart cycle, so the cycle's last coefficient
  // is the supremum.
  BetaSchedule probe(Fista{});
  double sup = 0.0;
  for (std::size_t k = 0; k < interval; ++k) sup = std::max(sup, probe.next_beta().beta);
  return sup;
}

std::string BetaSchedule::name() const {
  struct Visitor {
    std::string operator()(const Constant& c) const {
      return c.beta == 0.0 ? "pg" : "constant(" + std::to_string(c.beta) + ")";
    }
    std::string operator()(const Fista&) const { return "fista"; }
    std::string operator()(const FistaFixedRestart& f) const {
      return f.interval == kNeverRestart ? "fista-rinf" : "fista-r" + std::to_string(f.interval);
    }
    std::string operator()(const FistaAdaptiveRestart&) const { return "fista-adaptive"; }
    std::string operator()(const FistaBothRestarts& b) const {
      return b.interval == kNeverRestart ? "fista-adaptive" : "fista-both-r" + std::to_string(b.interval);
    }
  };
  return std::visit(Visitor{}, variant_);
}

bool adaptive_restart_triggered(std::span<const double> y_prev, std::span<const double> x_next,
                                std::span<const double> x_curr) {
  if (y_prev.size() != x_next.size() || x_next.size() != x_curr.size()) {
    throw ArgumentError("adaptive_restart_triggered: length mismatch");
  }
  double ip = 0.0;
  for (std::size_t i = 0; i < x_next.size(); ++i) ip += (y_prev[i] - x_next[i]) * (x_next[i] - x_curr[i]);
  return ip > 0.0;
}

}  // namespace pgex

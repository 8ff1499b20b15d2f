#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <variant>

namespace pgex {

/// Restart interval meaning "never": a fixed-restart schedule with this
/// interval produces the plain FISTA sequence.
inline constexpr std::size_t kNeverRestart = std::numeric_limits<std::size_t>::max();

/// Generator of extrapolation coefficients beta_k, including the FISTA
/// theta-recurrence and restart bookkeeping.
///
/// FISTA state starts at theta_{-1} = theta_0 = 1. Each call to next_beta
/// returns beta_k = (theta_{k-1} - 1) / theta_k and then advances
/// theta_{k+1} = (1 + sqrt(1 + 4 theta_k^2)) / 2. A restart (adaptive signal or
/// fixed-interval expiry) resets both thetas to 1 and the interval counter, so
/// the coefficient returned on that call is 0.
class BetaSchedule {
 public:
  struct Constant {
    double beta = 0.0;
  };
  struct Fista {};
  struct FistaFixedRestart {
    std::size_t interval = 500;
  };
  struct FistaAdaptiveRestart {};
  struct FistaBothRestarts {
    std::size_t interval = 500;
  };
  using Variant = std::variant<Constant, Fista, FistaFixedRestart, FistaAdaptiveRestart, FistaBothRestarts>;

  struct Step {
    double beta = 0.0;
    bool restarted = false;
  };

  explicit BetaSchedule(Variant v);

  static BetaSchedule constant(double beta) { return BetaSchedule(Constant{beta}); }
  static BetaSchedule fista() { return BetaSchedule(Fista{}); }
  static BetaSchedule fixed_restart(std::size_t interval) { return BetaSchedule(FistaFixedRestart{interval}); }
  static BetaSchedule adaptive_restart() { return BetaSchedule(FistaAdaptiveRestart{}); }
  static BetaSchedule both_restarts(std::size_t interval) { return BetaSchedule(FistaBothRestarts{interval}); }

  Step next_beta(bool restart_signal = false);

  /// Back to theta_{-1} = theta_0 = 1 with a zeroed counter.
  void reset() noexcept;

  const Variant& variant() const noexcept { return variant_; }
  bool is_fista() const noexcept;
  bool uses_adaptive_restart() const noexcept;
  /// Restart interval, or kNeverRestart.
  std::size_t restart_interval() const noexcept;

  /// sup_k beta_k over an unbounded run (1 for FISTA without fixed restart).
  double supremum() const;

  double theta_prev() const noexcept { return theta_prev_; }
  double theta_curr() const noexcept { return theta_curr_; }
  std::size_t iterations_since_restart() const noexcept { return since_restart_; }

  std::string name() const;

 private:
  Variant variant_;
  double theta_prev_ = 1.0;
  double theta_curr_ = 1.0;
  std::size_t since_restart_ = 0;
};

/// True iff <y_prev - x_next, x_next - x_curr> > 0 (strict).
bool adaptive_restart_triggered(std::span<const double> y_prev, std::span<const double> x_next,
                                std::span<const double> x_curr);

}  // namespace pgex

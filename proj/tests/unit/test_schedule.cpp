#include <cmath>

#include "doctest.h"
#include "pgex/linalg.hpp"
#include "pgex/schedule.hpp"

using namespace pgex;

TEST_SUITE("schedule") {

TEST_CASE("FISTA recurrence examples") {
  BetaSchedule s = BetaSchedule::fista();
  CHECK(s.next_beta().beta == 0.0);
  CHECK(s.next_beta().beta == 0.0);
  CHECK(s.theta_curr() == doctest::Approx(2.1935).epsilon(1e-4));
  const double theta1 = (1 + std::sqrt(5.0)) / 2;
  const double theta2 = (1 + std::sqrt(1 + 4 * theta1 * theta1)) / 2;
  CHECK(s.next_beta().beta == doctest::Approx((theta1 - 1) / theta2));
  CHECK((theta1 - 1) / theta2 == doctest::Approx(0.2817).epsilon(1e-4));
}

TEST_CASE("FISTA betas stay in [0, 1) and increase") {
  BetaSchedule s = BetaSchedule::fista();
  double prev = -1.0;
  for (int k = 0; k < 5000; ++k) {
    const double b = s.next_beta().beta;
    CHECK(b >= 0.0);
    CHECK(b < 1.0);
    CHECK(b >= prev);
    prev = b;
  }
}

TEST_CASE("constant schedule") {
  BetaSchedule s = BetaSchedule::constant(0.3);
  for (int k = 0; k < 10; ++k) CHECK(s.next_beta(true).beta == 0.3);
  CHECK(s.supremum() == 0.3);
  CHECK_FALSE(s.is_fista());
  CHECK_THROWS_AS(BetaSchedule::constant(-0.1), ArgumentError);
  CHECK_THROWS_AS(BetaSchedule::fixed_restart(0), ArgumentError);
}

TEST_CASE("fixed restart with an infinite interval reproduces plain FISTA") {
  BetaSchedule a = BetaSchedule::fista();
  BetaSchedule b = BetaSchedule::fixed_restart(kNeverRestart);
  for (int k = 0; k < 3000; ++k) {
    const auto sa = a.next_beta();
    const auto sb = b.next_beta();
    CHECK(sa.beta == sb.beta);
    CHECK_FALSE(sb.restarted);
  }
  CHECK(b.name() == "fista-rinf");
}

TEST_CASE("fixed restart resets every K iterations") {
  BetaSchedule s = BetaSchedule::fixed_restart(4);
  BetaSchedule ref = BetaSchedule::fista();
  std::vector<double> period;
  for (int k = 0; k < 4; ++k) period.push_back(ref.next_beta().beta);
  for (int k = 0; k < 20; ++k) {
    const auto step = s.next_beta();
    CHECK(step.beta == period[k % 4]);
    CHECK(step.restarted == (k > 0 && k % 4 == 0));
  }
  CHECK(s.supremum() == period[3]);
}

TEST_CASE("adaptive restart signal sets beta to zero and resets the counter") {
  BetaSchedule s = BetaSchedule::both_restarts(5);
  for (int k = 0; k < 3; ++k) s.next_beta();
  const auto step = s.next_beta(true);
  CHECK(step.restarted);
  CHECK(step.beta == 0.0);
  CHECK(s.iterations_since_restart() == 1);
  // Fixed counter restarted too: next fixed restart is 5 iterations after the adaptive one.
  for (int k = 0; k < 4; ++k) CHECK_FALSE(s.next_beta().restarted);
  CHECK(s.next_beta().restarted);
}

TEST_CASE("adaptive_restart_triggered") {
  // Written as (y, x_next, x_curr): y - x_next and x_next - x_curr.
  CHECK_FALSE(adaptive_restart_triggered(Vector{1, 0}, Vector{0, 0}, Vector{1, 0}));
  CHECK(adaptive_restart_triggered(Vector{2, 0}, Vector{1, 0}, Vector{0, 0}));
  CHECK_FALSE(adaptive_restart_triggered(Vector{1, 1}, Vector{0, 1}, Vector{0, 0}));
  CHECK_THROWS_AS(adaptive_restart_triggered(Vector{1}, Vector{1, 2}, Vector{0, 0}), ArgumentError);
}

TEST_CASE("names") {
  CHECK(BetaSchedule::constant(0).name() == "pg");
  CHECK(BetaSchedule::fista().name() == "fista");
  CHECK(BetaSchedule::adaptive_restart().name() == "fista-adaptive");
  CHECK(BetaSchedule::both_restarts(500).name() == "fista-both-r500");
}

}  // TEST_SUITE

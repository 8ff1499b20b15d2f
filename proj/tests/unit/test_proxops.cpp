#include <cmath>
#include <random>

#include "doctest.h"
#include "pgex/proxops.hpp"
#include "support.hpp"

using namespace pgex;

namespace {

double l1(const Vector& x) {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double sq_dist(const Vector& a, const Vector& b) {
  const double d = distance(a, b);
  return d * d;
}

}  // namespace

TEST_SUITE("proxops") {

TEST_CASE("soft_threshold examples") {
  CHECK(soft_threshold(Vector{0, 0, 0}, 1) == Vector{0, 0, 0});
  CHECK(soft_threshold(Vector{1.5, -2, 0.25}, 0) == Vector{1.5, -2, 0.25});
  const Vector out = soft_threshold(Vector{2, -0.5, 1}, 1);
  CHECK(out == Vector{1, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) {
    const double v[] = {2, -0.5, 1};
    CHECK(std::abs(out[i] - oracle::grid_soft_threshold(v[i], 1)) <= 1e-4);
  }
}

TEST_CASE("soft_threshold errors") {
  CHECK_THROWS_AS(soft_threshold(Vector{1, INFINITY}, 1), ArgumentError);
  CHECK_THROWS_AS(soft_threshold(Vector{1}, -1), ArgumentError);
  CHECK_THROWS_AS(soft_threshold(Vector{1}, NAN), ArgumentError);
}

TEST_CASE("project_simplex examples") {
  CHECK(project_simplex(Vector{0.5, 0.5}, 1) == Vector{0.5, 0.5});
  CHECK(project_simplex(Vector{2, 0}, 1) == Vector{1, 0});
  CHECK(oracle::simplex_projection_enumerate({2, 0}, 1) == Vector{1, 0});
  CHECK(project_simplex(Vector{1, 1, 1}, 3) == Vector{1, 1, 1});
}

TEST_CASE("project_simplex errors") {
  CHECK_THROWS_AS(project_simplex(Vector{1, NAN}, 1), ArgumentError);
  CHECK_THROWS_AS(project_simplex(Vector{1, 2}, 0), ArgumentError);
  CHECK_THROWS_AS(project_simplex(Vector{}, 1), ArgumentError);
}

TEST_CASE("project_simplex output is feasible") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> sdist(0.1, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 40;
    const Vector v = testing::gaussian_vector(rng, n, 5.0);
    const double s = sdist(rng);
    const Vector x = project_simplex(v, s);
    double sum = 0.0;
    for (double xi : x) {
      CHECK(xi >= 0.0);
      sum += xi;
    }
    CHECK(std::abs(sum - s) <= 1e-12 * s);
  }
}

TEST_CASE("project_simplex agrees with the active-set oracle") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> sdist(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Vector v = testing::gaussian_vector(rng, n, 3.0);
    const double s = sdist(rng);
    CHECK(testing::max_abs_diff(project_simplex(v, s), oracle::simplex_projection_enumerate(v, s)) <= 1e-8);
  }
}

TEST_CASE("both operators are nonexpansive") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 25;
    const Vector u = testing::gaussian_vector(rng, n, 3.0);
    const Vector v = testing::gaussian_vector(rng, n, 3.0);
    const double d = distance(u, v);
    CHECK(distance(soft_threshold(u, 0.7), soft_threshold(v, 0.7)) <= d * (1 + 1e-12));
    CHECK(distance(project_simplex(u, 2.0), project_simplex(v, 2.0)) <= d * (1 + 1e-12) + 1e-12);
  }
}

TEST_CASE("prox optimality against random perturbations") {
  std::mt19937_64 rng(24);
  const double step = 0.4;
  const double lambda = 1.3;
  for (int trial = 0; trial < 10; ++trial) {
    const Vector v = testing::gaussian_vector(rng, 8, 2.0);

    const Vector st = soft_threshold(v, lambda * step);
    const double st_val = lambda * l1(st) + sq_dist(st, v) / (2 * step);
    const Vector ps = project_simplex(v, 3.0);
    const double ps_val = sq_dist(ps, v) / (2 * step);
    for (int p = 0; p < 1000; ++p) {
      Vector x = st;
      const Vector e = testing::gaussian_vector(rng, 8, 0.1);
      for (std::size_t i = 0; i < 8; ++i) x[i] += e[i];
      CHECK(st_val <= lambda * l1(x) + sq_dist(x, v) / (2 * step) + 1e-12);

      // Feasible perturbation: project a perturbed point back onto the simplex.
      Vector z = ps;
      for (std::size_t i = 0; i < 8; ++i) z[i] += e[i];
      const Vector feasible = project_simplex(z, 3.0);
      CHECK(ps_val <= sq_dist(feasible, v) / (2 * step) + 1e-12);
    }
  }
}

}  // TEST_SUITE

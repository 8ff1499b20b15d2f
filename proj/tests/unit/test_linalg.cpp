#include <cmath>
#include <random>

#include "doctest.h"
#include "pgex/linalg.hpp"
#include "support.hpp"

using namespace pgex;

TEST_SUITE("linalg") {

TEST_CASE("mat_vec examples") {
  CHECK(mat_vec(DenseMatrix::identity(3), Vector{1, 2, 3}) == Vector{1, 2, 3});
  CHECK(mat_vec(DenseMatrix::zero(2, 2), Vector{5, 7}) == Vector{0, 0});
  CHECK(mat_vec(DenseMatrix{{1, 2}, {3, 4}}, Vector{1, 1}) == Vector{3, 7});
  CHECK(mat_t_vec(DenseMatrix{{1, 2}, {3, 4}}, Vector{1, 1}) == Vector{4, 6});
}

TEST_CASE("dimension mismatch is an argument error") {
  const DenseMatrix m{{1, 2}, {3, 4}};
  CHECK_THROWS_AS(mat_vec(m, Vector{1, 2, 3}), ArgumentError);
  CHECK_THROWS_AS(mat_t_vec(m, Vector{1}), ArgumentError);
  CHECK_THROWS_AS(dot(Vector{1}, Vector{1, 2}), ArgumentError);
}

TEST_CASE("matrix construction validates entries") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), ArgumentError);
  CHECK_THROWS_AS(DenseMatrix(1, 2, {1.0, NAN}), ArgumentError);
  CHECK_THROWS_AS((DenseMatrix{{1, 2}, {3}}), ArgumentError);
  const DenseMatrix m{{1, 2, 3}, {4, 5, 6}};
  CHECK(m.transpose().rows() == 3);
  CHECK(m.transpose()(2, 1) == 6);
}

TEST_CASE("gram_spectral_norm examples") {
  CHECK(gram_spectral_norm(DenseMatrix::diagonal(Vector{3, 1})).value == doctest::Approx(9.0).epsilon(1e-9));
  const EigenEstimate zero = gram_spectral_norm(DenseMatrix::zero(3, 4));
  CHECK(zero.value == 0.0);
  CHECK(zero.residual == 0.0);
}

TEST_CASE("gram_spectral_norm matches the Jacobi oracle on a random 5x8 matrix") {
  std::mt19937_64 rng(11);
  const DenseMatrix m = testing::gaussian_matrix(rng, 5, 8);
  DenseMatrix gram(8, 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      for (std::size_t r = 0; r < 5; ++r) gram(i, j) += m(r, i) * m(r, j);
  const double expected = oracle::jacobi_eigenvalues(testing::to_rows(gram)).back();
  const EigenEstimate est = gram_spectral_norm(m);
  CHECK(std::abs(est.value - expected) <= 1e-6 * expected);
  CHECK(est.residual <= 1e-8);
}

TEST_CASE("sym_extreme_eigs examples") {
  const ExtremeEigenvalues d = sym_extreme_eigs(DenseMatrix::diagonal(Vector{3, -2}));
  CHECK(d.max.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(d.min.value == doctest::Approx(-2.0).epsilon(1e-9));
  const ExtremeEigenvalues swap = sym_extreme_eigs(DenseMatrix{{0, 1}, {1, 0}});
  CHECK(swap.max.value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(swap.min.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("sym_extreme_eigs matches the Jacobi oracle on random symmetric matrices") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {6u, 6u, 6u, 30u}) {
    DenseMatrix d = testing::gaussian_matrix(rng, n, n);
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = d(i, j) + d(j, i);
    const auto eig = oracle::jacobi_eigenvalues(testing::to_rows(a));
    const ExtremeEigenvalues est = sym_extreme_eigs(a);
    CHECK(est.max.value == doctest::Approx(eig.back()).epsilon(1e-6));
    CHECK(est.min.value == doctest::Approx(eig.front()).epsilon(1e-6));
  }
}

TEST_CASE("near-degenerate top eigenvalues still converge") {
  const DenseMatrix a = DenseMatrix::diagonal(Vector{5.0, 5.0 - 1e-9, 5.0 - 2e-9, 1.0, -4.0, -5.0});
  const ExtremeEigenvalues est = sym_extreme_eigs(a);
  CHECK(est.max.value == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(est.min.value == doctest::Approx(-5.0).epsilon(1e-9));
}

TEST_CASE("orthogonal start is handled") {
  // The all-ones start is orthogonal to the top eigenvector (1, -1).
  const DenseMatrix a{{1, -1}, {-1, 1}};
  CHECK(gram_spectral_norm(a).value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(sym_extreme_eigs(a).max.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("asymmetric input and non-convergence") {
  CHECK_THROWS_AS(sym_extreme_eigs(DenseMatrix{{1, 2}, {0, 1}}), ArgumentError);
  CHECK_THROWS_AS(sym_extreme_eigs(DenseMatrix(2, 3)), ArgumentError);
  std::mt19937_64 rng(13);
  const DenseMatrix m = testing::gaussian_matrix(rng, 40, 40);
  try {
    gram_spectral_norm(m, {1e-14, 2});
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.best().iterations == 2);
    CHECK(e.best().value > 0.0);
  }
}

TEST_CASE("Rayleigh bounds hold for random probes") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix m = testing::gaussian_matrix(rng, 7, 9);
    const double top = gram_spectral_norm(m).value;
    DenseMatrix d = testing::gaussian_matrix(rng, 9, 9);
    DenseMatrix a(9, 9);
    for (std::size_t i = 0; i < 9; ++i)
      for (std::size_t j = 0; j < 9; ++j) a(i, j) = d(i, j) + d(j, i);
    const ExtremeEigenvalues ext = sym_extreme_eigs(a);
    for (int p = 0; p < 200; ++p) {
      const Vector v = testing::gaussian_vector(rng, 9);
      const double vv = dot(v, v);
      const Vector mv = mat_vec(m, v);
      CHECK(dot(mv, mv) / vv <= top * (1 + 1e-8) + 1e-8);
      const double q = dot(v, mat_vec(a, v)) / vv;
      CHECK(q <= ext.max.value + 1e-8);
      CHECK(q >= ext.min.value - 1e-8);
    }
  }
}

TEST_CASE("power iteration is deterministic") {
  std::mt19937_64 rng(15);
  const DenseMatrix m = testing::gaussian_matrix(rng, 20, 30);
  const EigenEstimate a = gram_spectral_norm(m);
  const EigenEstimate b = gram_spectral_norm(m);
  CHECK(a.value == b.value);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("inflate_modulus") {
  CHECK(inflate_modulus(2.0, 1e-8) == doctest::Approx(2.0 * (1 + 1e-7)));
}

}  // TEST_SUITE

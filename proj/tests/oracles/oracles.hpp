#pragma once

// Reference implementations used only to check the library. They share no code
// with pgex beyond plain std::vector storage.

#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, rows of equal length

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
Vec jacobi_eigenvalues(Mat a);

// argmin_x t|x| + (x - v)^2 / 2 by exhaustive search on the grid h*Z.
double grid_soft_threshold(double v, double t, double h = 1e-4);

// Euclidean projection onto {x >= 0, sum x = s} by enumerating every support set
// and keeping the KKT point. Exponential in n; meant for n <= 6.
Vec simplex_projection_enumerate(const Vec& v, double s);

// Plain proximal-gradient loop for 0.5||Ax - b||^2 + lambda ||x||_1 with step 1/L.
// Returns x^0, x^1, ..., x^iters.
std::vector<Vec> ista_lasso(const Mat& A, const Vec& b, double lambda, double L, Vec x0, std::size_t iters);

// Central-difference gradient.
Vec central_difference(const std::function<double(const Vec&)>& f, const Vec& x, double h = 1e-6);

}  // namespace oracle

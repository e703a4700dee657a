// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used only by tests. None of these call into the
// library's solvers; they use plain Eigen decompositions and textbook
// algorithms so that agreement with the library is meaningful.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cogbf/numerics.hpp"

namespace oracle {

using cogbf::ComplexMatrix;

/// Constraint ||M X||_F^2 <= c (M may be the identity).
struct QuadraticBall {
    ComplexMatrix m;
    double c = 1.0;
};

/// Euclidean projection onto one QuadraticBall: (I + g M^H M)^{-1} A with g
/// found by bisection on the constraint, using FullPivLU solves.
ComplexMatrix project_ball(const ComplexMatrix& a, const QuadraticBall& ball);

/// Dykstra's alternating projections onto the intersection of two balls.
/// Iterates until successive iterates move less than tol (Frobenius).
ComplexMatrix dykstra(const ComplexMatrix& a, const QuadraticBall& first,
                      const QuadraticBall& second, double tol = 1e-12,
                      int max_iters = 2'000'000);

/// Classical water-filling of total power p over channel gains g_k:
/// p_k = (mu - 1/g_k)^+, returns sum log2(1 + g_k p_k).
double water_filling_capacity(const std::vector<double>& gains, double p);

/// Central finite-difference real gradient dF/dRe + j dF/dIm, entrywise.
ComplexMatrix fd_gradient(const std::function<double(const ComplexMatrix&)>& f,
                          const ComplexMatrix& z, double h = 1e-6);

/// One-sided paired t-test of mean(x - y) > 0; returns the p-value.
double paired_t_pvalue_greater(const std::vector<double>& x, const std::vector<double>& y);

/// Brute-force nearest unit-modulus matrix over a phase grid per entry.
ComplexMatrix grid_unit_modulus(const ComplexMatrix& a, int points);

}  // namespace oracle

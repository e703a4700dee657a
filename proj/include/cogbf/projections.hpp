// SPDX-License-Identifier: Apache-2.0
//
// Projection operators used by the ADMM solvers:
//   * unit-modulus set  F = { A : |A(m,n)| = 1 }
//   * power/interference set S = { A : ||A||^2 <= P, ||H_ps A||^2 <= I }
//   * hybrid feasibility set S' = { A : ||F_RF A||^2 <= P, ||H_ps F_RF A||^2 <= I }
#pragma once

#include "cogbf/multiplier_search.hpp"
#include "cogbf/numerics.hpp"

namespace cogbf {

struct TraceConstraintSet {
    ComplexMatrix h_ps;
    double p_max = 1.0;
    double i_max = 1.0;
};

struct HybridFeasibilitySet {
    ComplexMatrix h_ps;
    ComplexMatrix f_rf_fixed;
    double p_max = 1.0;
    double i_max = 1.0;
};

/// Outcome of a constrained projection: the projected matrix plus the KKT
/// multipliers found by the search (both zero when the input was feasible).
struct ProjectionResult {
    ComplexMatrix x;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    bool was_feasible = false;
};

/// Elementwise phase extraction; zero entries stay zero.
ComplexMatrix project_onto_F(const ComplexMatrix& a);

/// Projection onto S. The interference Gram matrix H_ps^H H_ps is
/// diagonalized once at construction, after which every projection costs
/// O(rows * cols) plus a scalar multiplier search.
class TraceConstraintProjector {
public:
    explicit TraceConstraintProjector(const TraceConstraintSet& set);

    ProjectionResult project(const ComplexMatrix& a) const;
    bool contains(const ComplexMatrix& a) const;

    const TraceConstraintSet& set() const { return set_; }

private:
    TraceConstraintSet set_;
    ComplexMatrix basis_;    // eigenvectors of H_ps^H H_ps
    RealVector gram_eigs_;   // matching eigenvalues, clamped at zero
};

ProjectionResult project_onto_S(const ComplexMatrix& a, const TraceConstraintSet& set);

/// Projection of a baseband matrix onto S' for a fixed analog precoder:
/// X = [I + F^H (g1 I + g2 H^H H) F]^{-1} A.
ProjectionResult project_onto_S_prime(const ComplexMatrix& a, const HybridFeasibilitySet& set);

}  // namespace cogbf

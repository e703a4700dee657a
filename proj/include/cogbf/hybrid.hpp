// SPDX-License-Identifier: Apache-2.0
//
// Types shared by the hybrid transmitter and receiver designs.
#pragma once

#include <cstdint>

#include "cogbf/admm_trace.hpp"
#include "cogbf/numerics.hpp"

namespace cogbf {

/// F = F_RF F_BB with a unit-modulus analog part.
struct HybridPrecoder {
    ComplexMatrix f_rf;  ///< T_s x N_st
    ComplexMatrix f_bb;  ///< N_st x L_s

    ComplexMatrix combined() const { return f_rf * f_bb; }
};

/// W = W_RF W_BB with a unit-modulus analog part.
struct HybridPostcoder {
    ComplexMatrix w_rf;  ///< R_s x N_sr
    ComplexMatrix w_bb;  ///< N_sr x L_s

    ComplexMatrix combined() const { return w_rf * w_bb; }
};

/// Result of one ADMM run: the factorization, its trace, and the final
/// auxiliary variable and multiplier (needed for KKT spot checks).
template <typename Factorization>
struct AdmmResult {
    Factorization solution;
    AdmmTrace trace;
    ComplexMatrix auxiliary;
    ComplexMatrix multiplier;
};

/// Updates shared by all three solvers for the splitting aux = A * B with a
/// unit-modulus A. `target` is aux + multiplier / penalty.
///
/// analog:  A = Pi_F( target * B^H (B B^H)^{-1} )
/// digital: B = (A^H A)^{-1} A^H target
ComplexMatrix analog_update(const ComplexMatrix& target, const ComplexMatrix& digital_prev);
ComplexMatrix digital_update(const ComplexMatrix& target, const ComplexMatrix& analog);

/// Random start: unit-modulus analog part with uniform phases and a Gaussian
/// digital part rescaled so ||A B||_F^2 = power.
struct RandomFactorization {
    ComplexMatrix analog;
    ComplexMatrix digital;
    ComplexMatrix auxiliary;
};
RandomFactorization random_factorization(Eigen::Index rows, Eigen::Index chains,
                                         Eigen::Index streams, double power,
                                         std::uint64_t seed);

}  // namespace cogbf

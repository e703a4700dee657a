// SPDX-License-Identifier: Apache-2.0
//
// Fully digital benchmark: capacity-optimal covariance under the power and
// interference caps, and the unconstrained linear MMSE post-coder.
#pragma once

#include "cogbf/channel.hpp"
#include "cogbf/numerics.hpp"

namespace cogbf {

struct DigitalSolution {
    ComplexMatrix f_tilde;        ///< optimal transmit covariance, T_s x T_s
    ComplexMatrix f_d;            ///< U_F sqrt(Sigma_F) over the positive eigenvalues
    double achieved_objective = 0.0;  ///< log2 det(I + Q^{-1/2} H F~ H^H Q^{-1/2})
    double lambda1 = 0.0;         ///< power multiplier
    double lambda2 = 0.0;         ///< interference multiplier
    double duality_gap = 0.0;
    ComplexMatrix q_matrix;       ///< interference-plus-noise covariance
    ComplexMatrix whitened_channel;  ///< Q^{-1/2} H_ss
};

/// Dual water-filling. For fixed multipliers the Lagrangian is maximized in
/// closed form by water-filling over the singular values of
/// Q^{-1/2} H_ss B^{-1/2}, B = l1 I + l2 H_ps^H H_ps; the multipliers come
/// from the shared nested bisection.
///
/// Throws NumericalError when the relative duality gap exceeds 1e-6.
DigitalSolution solve_digital_precoder(const ScenarioChannels& scenario);

/// Keeps the `columns` strongest eigen-directions of F~ (zero-padded when the
/// optimum has lower rank).
ComplexMatrix rank_capped_precoder(const DigitalSolution& solution, int columns);

/// W = (H F F^H H^H + H_sp~ H_sp~^H + sigma_n^2 I)^{-1} H F.
ComplexMatrix digital_mmse_postcoder(const ScenarioChannels& scenario,
                                     const ComplexMatrix& precoder);

/// log2 det(I + Q^{-1} H F~ H^H), the objective of the covariance problem.
double covariance_objective(const ScenarioChannels& scenario, const ComplexMatrix& f_tilde);

}  // namespace cogbf

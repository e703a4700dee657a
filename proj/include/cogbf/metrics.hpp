// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cogbf/channel.hpp"
#include "cogbf/numerics.hpp"

namespace cogbf {

struct LinkReport {
    double spectral_efficiency = 0.0;  ///< bits/s/Hz
    double tx_power = 0.0;             ///< ||F||_F^2
    double interference_power = 0.0;   ///< ||H_ps F||_F^2
    double power_violation = 0.0;      ///< max(0, tx_power / P_max - 1)
    double interference_violation = 0.0;
    int postcoder_rank = 0;            ///< rank of W used for the rate (0 if not evaluated)
};

/// Numerical column rank of W (singular values above 1e-10 * largest).
int postcoder_rank(const ComplexMatrix& w);

/// log2 det(I + R_n^{-1} W^H H F F^H H^H W) with
/// R_n = W^H (H_sp~ H_sp~^H + sigma_n^2 I) W. A rank-deficient W is replaced
/// by an orthonormal basis of its column space.
double spectral_efficiency(const ScenarioChannels& scenario, const ComplexMatrix& f,
                           const ComplexMatrix& w);

/// Exact transmit and interference powers and relative violations.
LinkReport audit(const ScenarioChannels& scenario, const ComplexMatrix& f);

/// audit() plus the rate achieved with post-coder w.
LinkReport evaluate_link(const ScenarioChannels& scenario, const ComplexMatrix& f,
                         const ComplexMatrix& w);

}  // namespace cogbf

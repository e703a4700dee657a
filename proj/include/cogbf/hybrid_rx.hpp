// SPDX-License-Identifier: Apache-2.0
//
// Hardware-constrained MMSE post-coder: the unconstrained MMSE solution W_D
// is projected, in the metric weighted by E{y y^H}^{1/2}, onto post-coders
// of the form W_RF W_BB with a unit-modulus W_RF. Solved by ADMM over the
// splitting G = W_RF W_BB.
#pragma once

#include <cstdint>

#include "cogbf/channel.hpp"
#include "cogbf/hybrid.hpp"

namespace cogbf {

struct RxCovariances {
    ComplexMatrix cov_ys;       ///< E{y y^H} = H F F^H H^H + H_sp~ H_sp~^H + sigma_n^2 I
    ComplexMatrix cov_ys_sqrt;  ///< PSD square root
    ComplexMatrix w_d;          ///< unconstrained MMSE post-coder cov_ys^{-1} H F
};

RxCovariances build_rx_covariances(const ScenarioChannels& scenario,
                                   const ComplexMatrix& precoder);

/// E||x - W^H y||^2 from second-order statistics (unit symbol variance):
/// L_s - 2 Re tr(W^H H F) + tr(W^H E{y y^H} W).
double closed_form_mse(const ScenarioChannels& scenario, const ComplexMatrix& precoder,
                       const ComplexMatrix& postcoder);

/// ||E{y y^H}^{1/2} (W_D - W)||_F^2.
double weighted_distance_sq(const RxCovariances& cov, const ComplexMatrix& postcoder);

enum class RxInit {
    Random,  ///< uniform random phases
    Dft,     ///< leading columns of the R_s-point DFT matrix
};

struct RxConfig {
    double beta = 1.0;
    double eps_g = 1e-3;
    double eps_p2 = 1e-4;
    int n_max = 500;
    RxInit init = RxInit::Random;

    void validate() const;
};

AdmmResult<HybridPostcoder> solve_hybrid_postcoder(const ScenarioChannels& scenario,
                                                   const ComplexMatrix& precoder,
                                                   const RxConfig& config, std::uint64_t seed);

}  // namespace cogbf

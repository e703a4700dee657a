// SPDX-License-Identifier: Apache-2.0
//
// Reduced-complexity hybrid precoder: the analog/digital factorization that
// is closest in Frobenius norm to the (rank-capped) digital optimum, under
// the same power and interference caps. Every ADMM step is closed form.
#pragma once

#include <cstdint>

#include "cogbf/channel.hpp"
#include "cogbf/digital.hpp"
#include "cogbf/hybrid.hpp"

namespace cogbf {

struct FrobConfig {
    double delta = 10.0;
    double eps_t = 1e-3;
    double eps_p3 = 1e-4;
    int n_max = 500;

    void validate() const;
};

/// Runs the ADMM against an explicit target F_D (T_s x L_s).
AdmmResult<HybridPrecoder> solve_hybrid_frobenius(const ScenarioChannels& scenario,
                                                  const ComplexMatrix& target,
                                                  const FrobConfig& config, std::uint64_t seed);

/// Targets the digital optimum rank-capped to L_s columns.
AdmmResult<HybridPrecoder> solve_hybrid_frobenius(const ScenarioChannels& scenario,
                                                  const DigitalSolution& digital,
                                                  const FrobConfig& config, std::uint64_t seed);

}  // namespace cogbf

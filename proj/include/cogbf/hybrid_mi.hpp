// SPDX-License-Identifier: Apache-2.0
//
// Mutual-information maximizing hybrid precoder. ADMM over the splitting
// Z = F_RF F_BB, where Z carries the power/interference constraints and the
// log-det objective, F_RF the unit-modulus constraint.
#pragma once

#include <cstdint>

#include "cogbf/channel.hpp"
#include "cogbf/hybrid.hpp"
#include "cogbf/projections.hpp"

namespace cogbf {

struct AdmmConfig {
    double alpha = 10.0;           ///< augmented-Lagrangian penalty
    double mu = 1e-3;              ///< projected-gradient step
    double eps_z = 1e-3;           ///< ||Z_n - Z_{n-1}||_F tolerance
    double eps_p = 1e-4;           ///< primal residual tolerance
    double eps_gd_initial = 1e-2;  ///< inner tolerance on ||Z_i - Z_{i-1}||_F^2
    double eps_gd_floor = 1e-8;
    int n_max = 500;
    int gd_max_iters = 2000;

    void validate() const;
};

/// Precomputed pieces of the Z-subproblem for one scenario.
class MiProblem {
public:
    explicit MiProblem(const ScenarioChannels& scenario);

    /// -log2 det(I + Ht Z Z^H Ht^H) with Ht = Q^{-1/2} H_ss.
    double neg_mutual_information(const ComplexMatrix& z) const;

    /// Augmented Lagrangian of the splitting (smooth part, Z inside S):
    /// -log2det(...) + Re<Lambda, Z - X> + alpha/2 ||Z - X||^2.
    double lagrangian(const ComplexMatrix& z, const ComplexMatrix& product,
                      const ComplexMatrix& lambda, double alpha) const;

    /// Real gradient of the smooth part (steepest-ascent direction in the
    /// real coordinates of Z):
    /// -(2/ln2) Ht^H (I + Ht Z Z^H Ht^H)^{-1} Ht Z + Lambda + alpha (Z - X).
    ComplexMatrix gradient(const ComplexMatrix& z, const ComplexMatrix& product,
                           const ComplexMatrix& lambda, double alpha) const;

    const ComplexMatrix& whitened_channel() const { return whitened_; }
    const TraceConstraintProjector& projector() const { return projector_; }

private:
    ComplexMatrix whitened_;
    ComplexMatrix gram_;  // Ht^H Ht
    TraceConstraintProjector projector_;
};

struct InnerResult {
    ComplexMatrix z;
    int iterations = 0;
};

/// Projected gradient on the Z-subproblem, stopping once
/// ||Z_i - Z_{i-1}||_F^2 < eps_gd or after `cap` steps.
InnerResult inner_projected_gradient(const MiProblem& problem, const ComplexMatrix& z_init,
                                     const ComplexMatrix& f_rf, const ComplexMatrix& f_bb,
                                     const ComplexMatrix& lambda, double alpha, double mu,
                                     double eps_gd, int cap);

/// Convenience overload that builds the MiProblem from the scenario.
InnerResult inner_projected_gradient(const ComplexMatrix& z_init, const ComplexMatrix& f_rf,
                                     const ComplexMatrix& f_bb, const ComplexMatrix& lambda,
                                     const ScenarioChannels& scenario, double alpha, double mu,
                                     double eps_gd, int cap);

/// Optional warm start for the analog precoder (all other variables stay random).
struct MiInitialization {
    ComplexMatrix f_rf;
};

/// Full ADMM run. The returned F_BB is projected onto S' for the final F_RF,
/// so the combined precoder always meets both caps.
AdmmResult<HybridPrecoder> solve_hybrid_mi(const ScenarioChannels& scenario,
                                           const AdmmConfig& config, std::uint64_t seed,
                                           const MiInitialization* init = nullptr);

/// Projected-gradient-map residual ||Z - Pi_S(Z - mu (grad f(Z) + Lambda))||_F
/// for the unpenalized Z-stationarity condition at a returned point.
double mi_stationarity_residual(const MiProblem& problem, const ComplexMatrix& z,
                                const ComplexMatrix& lambda, double mu);

}  // namespace cogbf

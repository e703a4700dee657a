// SPDX-License-Identifier: Apache-2.0
#include "cogbf/hybrid_frob.hpp"

#include <sstream>

#include "cogbf/projections.hpp"

namespace cogbf {

void FrobConfig::validate() const {
    if (!(delta > 0.0) || !(eps_t > 0.0) || !(eps_p3 > 0.0) || n_max < 1) {
        throw ConfigError("FrobConfig: delta and tolerances must be positive and n_max >= 1");
    }
}

AdmmResult<HybridPrecoder> solve_hybrid_frobenius(const ScenarioChannels& scenario,
                                                  const ComplexMatrix& target,
                                                  const FrobConfig& config, std::uint64_t seed) {
    config.validate();
    const SystemConfig& sys = scenario.config;
    if (target.rows() != sys.tx_antennas_s || target.cols() != sys.streams_s) {
        throw DimensionError("solve_hybrid_frobenius: target must be T_s x L_s");
    }
    const double delta = config.delta;
    const TraceConstraintProjector projector(
        TraceConstraintSet{scenario.h_ps, sys.p_max, sys.i_max});

    RandomFactorization start = random_factorization(sys.tx_antennas_s, sys.rf_chains_tx,
                                                     sys.streams_s, sys.p_max, seed);
    ComplexMatrix f_rf = std::move(start.analog);
    ComplexMatrix f_bb = std::move(start.digital);
    ComplexMatrix t = std::move(start.auxiliary);
    ComplexMatrix k = ComplexMatrix::Zero(t.rows(), t.cols());

    AdmmResult<HybridPrecoder> result;
    result.trace.change_tolerance = config.eps_t;
    result.trace.primal_tolerance = config.eps_p3;

    for (int n = 1; n <= config.n_max; ++n) {
        const ComplexMatrix unconstrained =
            (target - k + delta * (f_rf * f_bb)) / (delta + 1.0);
        const ComplexMatrix t_next = projector.project(unconstrained).x;
        const double t_change = (t_next - t).norm();
        t = t_next;

        const ComplexMatrix tgt = t + k / delta;
        f_rf = analog_update(tgt, f_bb);
        f_bb = digital_update(tgt, f_rf);

        const ComplexMatrix product = f_rf * f_bb;
        const ComplexMatrix residual = t - product;
        const ComplexMatrix k_next = k + delta * residual;

        IterationRecord rec;
        rec.primal_residual = residual.norm();
        rec.aux_change = t_change;
        rec.multiplier_change_sq = fro_sq(k_next - k);
        k = k_next;
        rec.multiplier_norm = k.norm();
        rec.lagrangian =
            fro_sq(target - t) + real_inner(k, residual) + 0.5 * delta * fro_sq(residual);
        rec.inner_iterations = 0;
        result.trace.iterations.push_back(rec);

        if (!all_finite(t) || !all_finite(f_bb)) {
            std::ostringstream msg;
            msg << "solve_hybrid_frobenius: non-finite iterate at iteration " << n;
            throw NumericalError(msg.str());
        }
        if (rec.aux_change <= config.eps_t && rec.primal_residual <= config.eps_p3) {
            result.trace.termination = Termination::TolerancesMet;
            break;
        }
    }

    const HybridFeasibilitySet fs{scenario.h_ps, f_rf, sys.p_max, sys.i_max};
    result.solution.f_bb = project_onto_S_prime(f_bb, fs).x;
    result.solution.f_rf = std::move(f_rf);
    result.auxiliary = std::move(t);
    result.multiplier = std::move(k);
    return result;
}

AdmmResult<HybridPrecoder> solve_hybrid_frobenius(const ScenarioChannels& scenario,
                                                  const DigitalSolution& digital,
                                                  const FrobConfig& config, std::uint64_t seed) {
    return solve_hybrid_frobenius(
        scenario, rank_capped_precoder(digital, scenario.config.streams_s), config, seed);
}

}  // namespace cogbf

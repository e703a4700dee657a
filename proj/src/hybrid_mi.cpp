// SPDX-License-Identifier: Apache-2.0
#include "cogbf/hybrid_mi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cogbf/rng.hpp"

namespace cogbf {

void AdmmConfig::validate() const {
    if (!(alpha > 0.0) || !(mu > 0.0) || !(eps_z > 0.0) || !(eps_p > 0.0) ||
        !(eps_gd_initial > 0.0) || !(eps_gd_floor > 0.0) || n_max < 1 || gd_max_iters < 1) {
        throw ConfigError("AdmmConfig: all parameters must be positive and n_max >= 1");
    }
}

MiProblem::MiProblem(const ScenarioChannels& scenario)
    : whitened_(psd_power(scenario.interference_plus_noise(), PsdExponent::MinusHalf) *
                scenario.h_ss),
      gram_(whitened_.adjoint() * whitened_),
      projector_(TraceConstraintSet{scenario.h_ps, scenario.config.p_max,
                                    scenario.config.i_max}) {}

double MiProblem::neg_mutual_information(const ComplexMatrix& z) const {
    // det(I_R + Ht Z Z^H Ht^H) = det(I_L + Z^H Ht^H Ht Z)
    ComplexMatrix small = z.adjoint() * gram_ * z;
    small.diagonal().array() += 1.0;
    return -log2_det_hpd(small);
}

double MiProblem::lagrangian(const ComplexMatrix& z, const ComplexMatrix& product,
                             const ComplexMatrix& lambda, double alpha) const {
    const ComplexMatrix diff = z - product;
    return neg_mutual_information(z) + real_inner(lambda, diff) + 0.5 * alpha * fro_sq(diff);
}

ComplexMatrix MiProblem::gradient(const ComplexMatrix& z, const ComplexMatrix& product,
                                  const ComplexMatrix& lambda, double alpha) const {
    // Push-through: Ht^H (I + Ht Z Z^H Ht^H)^{-1} Ht Z = K Z (I + Z^H K Z)^{-1}.
    const ComplexMatrix kz = gram_ * z;
    ComplexMatrix small = z.adjoint() * kz;
    small.diagonal().array() += 1.0;
    const ComplexMatrix term = small.llt().solve(kz.adjoint()).adjoint();
    return (-2.0 / std::numbers::ln2) * term + lambda + alpha * (z - product);
}

InnerResult inner_projected_gradient(const MiProblem& problem, const ComplexMatrix& z_init,
                                     const ComplexMatrix& f_rf, const ComplexMatrix& f_bb,
                                     const ComplexMatrix& lambda, double alpha, double mu,
                                     double eps_gd, int cap) {
    if (z_init.rows() != f_rf.rows() || z_init.cols() != f_bb.cols() ||
        f_rf.cols() != f_bb.rows() || lambda.rows() != z_init.rows() ||
        lambda.cols() != z_init.cols()) {
        throw DimensionError("inner_projected_gradient: inconsistent shapes");
    }
    const ComplexMatrix product = f_rf * f_bb;
    InnerResult out;
    out.z = z_init;
    for (int i = 0; i < cap; ++i) {
        const ComplexMatrix step = out.z - mu * problem.gradient(out.z, product, lambda, alpha);
        ComplexMatrix next = problem.projector().project(step).x;
        const double change_sq = fro_sq(next - out.z);
        out.z = std::move(next);
        out.iterations = i + 1;
        if (change_sq < eps_gd) {
            break;
        }
    }
    return out;
}

InnerResult inner_projected_gradient(const ComplexMatrix& z_init, const ComplexMatrix& f_rf,
                                     const ComplexMatrix& f_bb, const ComplexMatrix& lambda,
                                     const ScenarioChannels& scenario, double alpha, double mu,
                                     double eps_gd, int cap) {
    return inner_projected_gradient(MiProblem(scenario), z_init, f_rf, f_bb, lambda, alpha, mu,
                                    eps_gd, cap);
}

AdmmResult<HybridPrecoder> solve_hybrid_mi(const ScenarioChannels& scenario,
                                           const AdmmConfig& config, std::uint64_t seed,
                                           const MiInitialization* init) {
    config.validate();
    const SystemConfig& sys = scenario.config;
    const MiProblem problem(scenario);
    const double alpha = config.alpha;

    RandomFactorization start = random_factorization(sys.tx_antennas_s, sys.rf_chains_tx,
                                                     sys.streams_s, sys.p_max, seed);
    if (init != nullptr && init->f_rf.size() > 0) {
        if (init->f_rf.rows() != start.analog.rows() || init->f_rf.cols() != start.analog.cols()) {
            throw DimensionError("solve_hybrid_mi: initial F_RF has the wrong shape");
        }
        start.analog = init->f_rf;
        const double prod = fro_sq(start.analog * start.digital);
        start.digital *= std::sqrt(sys.p_max / prod);
    }
    ComplexMatrix f_rf = std::move(start.analog);
    ComplexMatrix f_bb = std::move(start.digital);
    ComplexMatrix z = std::move(start.auxiliary);
    ComplexMatrix lambda = ComplexMatrix::Zero(z.rows(), z.cols());

    AdmmResult<HybridPrecoder> result;
    result.trace.change_tolerance = config.eps_z;
    result.trace.primal_tolerance = config.eps_p;
    result.trace.iterations.reserve(static_cast<std::size_t>(config.n_max));
    double eps_gd = config.eps_gd_initial;

    for (int n = 1; n <= config.n_max; ++n) {
        // Z-step, warm-started from the previous Z.
        const InnerResult inner = inner_projected_gradient(problem, z, f_rf, f_bb, lambda, alpha,
                                                           config.mu, eps_gd,
                                                           config.gd_max_iters);
        const double z_change = (inner.z - z).norm();
        z = inner.z;

        // Analog step uses the previous digital iterate (Gauss-Seidel order).
        const ComplexMatrix target = z + lambda / alpha;
        f_rf = analog_update(target, f_bb);
        f_bb = digital_update(target, f_rf);

        const ComplexMatrix product = f_rf * f_bb;
        const ComplexMatrix residual = z - product;
        const ComplexMatrix lambda_next = lambda + alpha * residual;

        IterationRecord rec;
        rec.primal_residual = residual.norm();
        rec.aux_change = z_change;
        rec.multiplier_change_sq = fro_sq(lambda_next - lambda);
        lambda = lambda_next;
        rec.multiplier_norm = lambda.norm();
        rec.lagrangian = problem.lagrangian(z, product, lambda, alpha);
        rec.inner_iterations = inner.iterations;
        result.trace.iterations.push_back(rec);

        if (!all_finite(z) || !all_finite(f_bb)) {
            std::ostringstream msg;
            msg << "solve_hybrid_mi: non-finite iterate at outer iteration " << n;
            throw NumericalError(msg.str());
        }
        if (rec.aux_change <= config.eps_z && rec.primal_residual <= config.eps_p) {
            result.trace.termination = Termination::TolerancesMet;
            break;
        }
        if (rec.aux_change < eps_gd && rec.primal_residual < eps_gd) {
            eps_gd = std::max(eps_gd / 10.0, config.eps_gd_floor);
        }
    }

    const HybridFeasibilitySet fs{scenario.h_ps, f_rf, sys.p_max, sys.i_max};
    result.solution.f_bb = project_onto_S_prime(f_bb, fs).x;
    result.solution.f_rf = std::move(f_rf);
    result.auxiliary = std::move(z);
    result.multiplier = std::move(lambda);
    return result;
}

double mi_stationarity_residual(const MiProblem& problem, const ComplexMatrix& z,
                                const ComplexMatrix& lambda, double mu) {
    // alpha = 0 drops the penalty term; product is irrelevant then.
    const ComplexMatrix grad = problem.gradient(z, z, lambda, 0.0);
    return (z - problem.projector().project(z - mu * grad).x).norm();
}

}  // namespace cogbf

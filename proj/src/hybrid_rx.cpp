// SPDX-License-Identifier: Apache-2.0
#include "cogbf/hybrid_rx.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cogbf/projections.hpp"

namespace cogbf {

void RxConfig::validate() const {
    if (!(beta > 0.0) || !(eps_g > 0.0) || !(eps_p2 > 0.0) || n_max < 1) {
        throw ConfigError("RxConfig: beta and tolerances must be positive and n_max >= 1");
    }
}

RxCovariances build_rx_covariances(const ScenarioChannels& scenario,
                                   const ComplexMatrix& precoder) {
    if (precoder.rows() != scenario.h_ss.cols()) {
        throw DimensionError("build_rx_covariances: precoder row count != T_s");
    }
    RxCovariances c;
    const ComplexMatrix hf = scenario.h_ss * precoder;
    c.cov_ys = hf * hf.adjoint() + scenario.interference_plus_noise();
    c.cov_ys = 0.5 * (c.cov_ys + c.cov_ys.adjoint());
    c.cov_ys_sqrt = psd_power(c.cov_ys, PsdExponent::Half);
    c.w_d = solve_linear(c.cov_ys, hf);
    return c;
}

double closed_form_mse(const ScenarioChannels& scenario, const ComplexMatrix& precoder,
                       const ComplexMatrix& postcoder) {
    if (postcoder.rows() != scenario.h_ss.rows() || postcoder.cols() != precoder.cols()) {
        throw DimensionError("closed_form_mse: post-coder must be R_s x L_s");
    }
    const ComplexMatrix hf = scenario.h_ss * precoder;
    const ComplexMatrix cov = hf * hf.adjoint() + scenario.interference_plus_noise();
    const double streams = static_cast<double>(precoder.cols());
    const double cross = (postcoder.adjoint() * hf).trace().real();
    const double quad = real_inner(postcoder, cov * postcoder);
    return streams - 2.0 * cross + quad;
}

double weighted_distance_sq(const RxCovariances& cov, const ComplexMatrix& postcoder) {
    return fro_sq(cov.cov_ys_sqrt * (cov.w_d - postcoder));
}

namespace {

ComplexMatrix dft_columns(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index k = 0; k < cols; ++k) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(r * k) /
                                 static_cast<double>(rows);
            m(r, k) = std::polar(1.0, angle);
        }
    }
    return m;
}

}  // namespace

AdmmResult<HybridPostcoder> solve_hybrid_postcoder(const ScenarioChannels& scenario,
                                                   const ComplexMatrix& precoder,
                                                   const RxConfig& config, std::uint64_t seed) {
    config.validate();
    const SystemConfig& sys = scenario.config;
    if (precoder.cols() != sys.streams_s) {
        throw DimensionError("solve_hybrid_postcoder: precoder must have L_s columns");
    }
    const RxCovariances cov = build_rx_covariances(scenario, precoder);
    const double beta = config.beta;

    const double scale = std::max(fro_sq(cov.w_d), 1e-12);
    RandomFactorization start =
        random_factorization(sys.rx_antennas_s, sys.rf_chains_rx, sys.streams_s, scale, seed);
    if (config.init == RxInit::Dft) {
        start.analog = dft_columns(sys.rx_antennas_s, sys.rf_chains_rx);
        const double prod = fro_sq(start.analog * start.digital);
        start.digital *= std::sqrt(scale / prod);
    }
    ComplexMatrix w_rf = std::move(start.analog);
    ComplexMatrix w_bb = std::move(start.digital);
    ComplexMatrix g = std::move(start.auxiliary);
    ComplexMatrix pi = ComplexMatrix::Zero(g.rows(), g.cols());

    // (E{yy^H} + beta I) is iteration invariant.
    ComplexMatrix shifted = cov.cov_ys;
    shifted.diagonal().array() += beta;
    const Eigen::LLT<ComplexMatrix> shifted_llt(shifted);
    const ComplexMatrix cov_wd = cov.cov_ys * cov.w_d;

    AdmmResult<HybridPostcoder> result;
    result.trace.change_tolerance = config.eps_g;
    result.trace.primal_tolerance = config.eps_p2;

    for (int n = 1; n <= config.n_max; ++n) {
        const ComplexMatrix g_next = shifted_llt.solve(cov_wd - pi + beta * (w_rf * w_bb));
        const double g_change = (g_next - g).norm();
        g = g_next;

        const ComplexMatrix target = g + pi / beta;
        w_rf = analog_update(target, w_bb);
        w_bb = digital_update(target, w_rf);

        const ComplexMatrix product = w_rf * w_bb;
        const ComplexMatrix residual = g - product;
        const ComplexMatrix pi_next = pi + beta * residual;

        IterationRecord rec;
        rec.primal_residual = residual.norm();
        rec.aux_change = g_change;
        rec.multiplier_change_sq = fro_sq(pi_next - pi);
        pi = pi_next;
        rec.multiplier_norm = pi.norm();
        rec.lagrangian = weighted_distance_sq(cov, g) + real_inner(pi, residual) +
                         0.5 * beta * fro_sq(residual);
        result.trace.iterations.push_back(rec);

        if (!all_finite(g) || !all_finite(w_bb)) {
            std::ostringstream msg;
            msg << "solve_hybrid_postcoder: non-finite iterate at iteration " << n;
            throw NumericalError(msg.str());
        }
        if (rec.aux_change <= config.eps_g && rec.primal_residual <= config.eps_p2) {
            result.trace.termination = Termination::TolerancesMet;
            break;
        }
    }
    result.solution.w_rf = std::move(w_rf);
    result.solution.w_bb = std::move(w_bb);
    result.auxiliary = std::move(g);
    result.multiplier = std::move(pi);
    return result;
}

}  // namespace cogbf

// SPDX-License-Identifier: Apache-2.0
#include "cogbf/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cogbf/rng.hpp"

namespace cogbf {

void SystemConfig::validate() const {
    std::ostringstream msg;
    auto fail = [&msg]() { throw ConfigError("invalid SystemConfig: " + msg.str()); };
    if (tx_antennas_s < 1 || rx_antennas_s < 1 || tx_antennas_p < 1 || rx_antennas_p < 1) {
        msg << "antenna counts must be positive";
        fail();
    }
    if (rf_chains_tx < 1 || rf_chains_rx < 1 || streams_s < 1 || streams_p < 1) {
        msg << "RF-chain and stream counts must be positive";
        fail();
    }
    if (rf_chains_tx > tx_antennas_s || rf_chains_rx > rx_antennas_s) {
        msg << "RF chains (" << rf_chains_tx << ", " << rf_chains_rx
            << ") exceed antenna counts (" << tx_antennas_s << ", " << rx_antennas_s << ")";
        fail();
    }
    if (streams_s > std::min(rf_chains_tx, rf_chains_rx)) {
        msg << "L_s = " << streams_s << " exceeds min(N_st, N_sr)";
        fail();
    }
    if (sigma_s_sq != 1.0 || sigma_p_sq != 1.0) {
        msg << "symbol variances are fixed to 1 (SNR is set through sigma_n_sq)";
        fail();
    }
    if (!(sigma_n_sq > 0.0)) {
        msg << "sigma_n_sq must be positive";
        fail();
    }
    if (!(p_max > 0.0) || !(i_max > 0.0)) {
        msg << "P_max and I_max must be positive";
        fail();
    }
    if (num_paths < 1) {
        msg << "num_paths must be >= 1";
        fail();
    }
    const int attainable = std::min({tx_antennas_p, rx_antennas_p, num_paths});
    if (streams_p > attainable) {
        msg << "L_p = " << streams_p << " exceeds attainable PU rank " << attainable;
        fail();
    }
}

ComplexMatrix ScenarioChannels::interference_plus_noise() const {
    ComplexMatrix q = h_sp_tilde * h_sp_tilde.adjoint();
    q.diagonal().array() += config.sigma_n_sq;
    return q;
}

ComplexVector ula_response(int num_elements, double phi, double d_over_lambda) {
    ComplexVector a(num_elements);
    const double step = 2.0 * std::numbers::pi * d_over_lambda * std::sin(phi);
    const double norm = 1.0 / std::sqrt(static_cast<double>(num_elements));
    for (int t = 0; t < num_elements; ++t) {
        a(t) = std::polar(norm, step * static_cast<double>(t));
    }
    return a;
}

LinkChannel draw_channel(int t_antennas, int r_antennas, int n_paths, double d_over_lambda,
                         std::uint64_t seed) {
    if (n_paths < 1) {
        throw ConfigError("draw_channel: n_paths must be >= 1");
    }
    Rng rng(seed);
    LinkChannel link;
    link.h = ComplexMatrix::Zero(r_antennas, t_antennas);
    link.paths.gains.reserve(n_paths);
    link.paths.arrival.reserve(n_paths);
    link.paths.departure.reserve(n_paths);
    const double scale = std::sqrt(static_cast<double>(t_antennas) * r_antennas / n_paths);
    for (int l = 0; l < n_paths; ++l) {
        const Complex gain = rng.complex_normal();
        const double arrival = rng.phase();
        const double departure = rng.phase();
        link.paths.gains.push_back(gain);
        link.paths.arrival.push_back(arrival);
        link.paths.departure.push_back(departure);
        link.h += (scale * gain) * ula_response(r_antennas, arrival, d_over_lambda) *
                  ula_response(t_antennas, departure, d_over_lambda).adjoint();
    }
    return link;
}

ScenarioChannels build_scenario(const SystemConfig& config, std::uint64_t seed) {
    config.validate();
    const int np = config.num_paths;
    const double dl = config.d_over_lambda;
    ScenarioChannels sc;
    sc.config = config;
    sc.seed = seed;
    sc.links.ss = draw_channel(config.tx_antennas_s, config.rx_antennas_s, np, dl,
                               derive_seed(seed, 1));
    sc.links.ps = draw_channel(config.tx_antennas_s, config.rx_antennas_p, np, dl,
                               derive_seed(seed, 2));
    sc.links.sp = draw_channel(config.tx_antennas_p, config.rx_antennas_s, np, dl,
                               derive_seed(seed, 3));
    sc.links.pp = draw_channel(config.tx_antennas_p, config.rx_antennas_p, np, dl,
                               derive_seed(seed, 4));

    Eigen::JacobiSVD<ComplexMatrix> svd(sc.links.pp.h, Eigen::ComputeFullV);
    const int lp = config.streams_p;
    const RealVector& sv = svd.singularValues();
    if (sv.size() < lp || !(sv(lp - 1) > 1e-12 * std::max(sv(0), 1e-300))) {
        std::ostringstream msg;
        msg << "build_scenario: H_pp has fewer than L_p = " << lp << " usable singular values";
        throw ConfigError(msg.str());
    }
    const double col_scale = std::sqrt(config.effective_pu_power() / lp);
    sc.f_p = svd.matrixV().leftCols(lp) * col_scale;
    sc.h_ss = sc.links.ss.h;
    sc.h_ps = sc.links.ps.h;
    sc.h_sp_tilde = sc.links.sp.h * sc.f_p;
    return sc;
}

ScenarioChannels with_noise(ScenarioChannels scenario, double sigma_n_sq) {
    scenario.config.sigma_n_sq = sigma_n_sq;
    scenario.config.validate();
    return scenario;
}

std::uint64_t scenario_fingerprint(const ScenarioChannels& scenario) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix_double = [&h](double v) {
        auto bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xFFU;
            h *= 0x100000001B3ULL;
        }
    };
    for (const ComplexMatrix* m : {&scenario.h_ss, &scenario.h_ps, &scenario.h_sp_tilde}) {
        mix_double(static_cast<double>(m->rows()));
        mix_double(static_cast<double>(m->cols()));
        for (Eigen::Index j = 0; j < m->cols(); ++j) {
            for (Eigen::Index i = 0; i < m->rows(); ++i) {
                mix_double((*m)(i, j).real());
                mix_double((*m)(i, j).imag());
            }
        }
    }
    return h;
}

}  // namespace cogbf

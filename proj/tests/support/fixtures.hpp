// SPDX-License-Identifier: Apache-2.0
// Small builders shared by the unit and acceptance tests.
#pragma once

#include <cstdint>

#include "cogbf/channel.hpp"
#include "cogbf/rng.hpp"

namespace fixture {

/// "R x T" sizing: rx_antennas_s = r, tx_antennas_s = t.
inline cogbf::SystemConfig sized(int r, int t, int rf = 4, int streams = 4) {
    cogbf::SystemConfig c;
    c.rx_antennas_s = r;
    c.tx_antennas_s = t;
    c.rf_chains_tx = rf;
    c.rf_chains_rx = rf;
    c.streams_s = streams;
    return c;
}

inline cogbf::ComplexMatrix gaussian(int rows, int cols, std::uint64_t seed) {
    cogbf::Rng rng(seed);
    return rng.complex_normal_matrix(rows, cols);
}

inline cogbf::ComplexMatrix hermitian(int n, std::uint64_t seed) {
    const cogbf::ComplexMatrix g = gaussian(n, n, seed);
    return 0.5 * (g + g.adjoint());
}

inline cogbf::ComplexMatrix psd(int n, std::uint64_t seed) {
    const cogbf::ComplexMatrix g = gaussian(n, n, seed);
    cogbf::ComplexMatrix p = g * g.adjoint();
    p.diagonal().array() += 0.1;
    return p;
}

}  // namespace fixture

namespace fixture {

/// Hand-built scenario for closed-form checks. Shapes of the config follow
/// the supplied matrices.
inline cogbf::ScenarioChannels manual(const cogbf::ComplexMatrix& h_ss,
                                      const cogbf::ComplexMatrix& h_ps,
                                      const cogbf::ComplexMatrix& h_sp_tilde, double sigma_n_sq,
                                      double p_max = 1.0, double i_max = 1.0) {
    cogbf::ScenarioChannels sc;
    sc.config.rx_antennas_s = static_cast<int>(h_ss.rows());
    sc.config.tx_antennas_s = static_cast<int>(h_ss.cols());
    sc.config.rx_antennas_p = static_cast<int>(h_ps.rows());
    sc.config.streams_p = static_cast<int>(h_sp_tilde.cols());
    sc.config.sigma_n_sq = sigma_n_sq;
    sc.config.p_max = p_max;
    sc.config.i_max = i_max;
    sc.h_ss = h_ss;
    sc.h_ps = h_ps;
    sc.h_sp_tilde = h_sp_tilde;
    return sc;
}

}  // namespace fixture

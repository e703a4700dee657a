// SPDX-License-Identifier: Apache-2.0
//
// Geometric narrow-band mmWave channels with uniform linear arrays and the
// assembled primary/secondary scenario consumed by the solvers.
#pragma once

#include <cstdint>
#include <vector>

#include "cogbf/numerics.hpp"

namespace cogbf {

/// Antenna, RF-chain and power parameters of the PU/SU pair.
///
/// Naming follows the link direction: *_s for the secondary (cognitive) user,
/// *_p for the primary user; t = transmit side, r = receive side.
struct SystemConfig {
    int tx_antennas_s = 16;   ///< T_s
    int rx_antennas_s = 64;   ///< R_s
    int tx_antennas_p = 16;   ///< T_p
    int rx_antennas_p = 16;   ///< R_p
    int rf_chains_tx = 4;     ///< N_st
    int rf_chains_rx = 4;     ///< N_sr
    int streams_s = 4;        ///< L_s
    int streams_p = 4;        ///< L_p
    double sigma_s_sq = 1.0;
    double sigma_p_sq = 1.0;
    double sigma_n_sq = 0.1;
    double p_max = 1.0;
    double i_max = 1.0;
    /// Transmit power of the PU precoder; non-positive means "same as p_max".
    double pu_power = 0.0;
    int num_paths = 15;
    double d_over_lambda = 0.5;

    /// Throws ConfigError when any invariant is violated.
    void validate() const;
    double effective_pu_power() const { return pu_power > 0.0 ? pu_power : p_max; }
};

/// Per-path parameters of one link, kept for reproducibility.
struct PathParameters {
    std::vector<Complex> gains;
    std::vector<double> arrival;
    std::vector<double> departure;
};

/// One realized link H (r_antennas x t_antennas).
struct LinkChannel {
    ComplexMatrix h;
    PathParameters paths;
};

/// Realized channels of all four links.
struct ChannelRealization {
    LinkChannel ss;  ///< SU tx -> SU rx, R_s x T_s
    LinkChannel ps;  ///< SU tx -> PU rx, R_p x T_s
    LinkChannel sp;  ///< PU tx -> SU rx, R_s x T_p
    LinkChannel pp;  ///< PU tx -> PU rx, R_p x T_p
};

/// Everything a solver needs about one channel draw.
struct ScenarioChannels {
    SystemConfig config;
    ComplexMatrix h_ss;
    ComplexMatrix h_ps;
    ComplexMatrix h_sp_tilde;  ///< H_sp * F_p, R_s x L_p
    ComplexMatrix f_p;         ///< T_p x L_p
    ChannelRealization links;
    std::uint64_t seed = 0;

    /// Interference-plus-noise covariance H_sp_tilde H_sp_tilde^H + sigma_n^2 I.
    ComplexMatrix interference_plus_noise() const;
};

/// Unit-norm ULA response: entry t is exp(j t 2pi (d/lambda) sin(phi)) / sqrt(T).
ComplexVector ula_response(int num_elements, double phi, double d_over_lambda);

/// H = sqrt(T R / N_p) sum_l alpha_l a_r(phi_r) a_t(phi_t)^H with
/// alpha_l ~ CN(0, 1) and angles uniform in [0, 2pi). Deterministic in seed.
LinkChannel draw_channel(int t_antennas, int r_antennas, int n_paths, double d_over_lambda,
                         std::uint64_t seed);

/// Draws the four links independently and forms the PU eigen-precoder F_p
/// (top L_p right singular vectors of H_pp, ||F_p||_F^2 = PU power).
ScenarioChannels build_scenario(const SystemConfig& config, std::uint64_t seed);

/// Same channels with a different noise level; used by SNR sweeps.
ScenarioChannels with_noise(ScenarioChannels scenario, double sigma_n_sq);

/// FNV-1a digest over the bit patterns of the solver-facing matrices.
std::uint64_t scenario_fingerprint(const ScenarioChannels& scenario);

}  // namespace cogbf

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cogbf/channel.hpp"
#include "cogbf/errors.hpp"
#include "cogbf/rng.hpp"
#include "support/fixtures.hpp"

using namespace cogbf;

TEST_CASE("rng is reproducible and roughly standard") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.uniform() == b.uniform());
    }
    Rng r(7);
    double mean = 0.0;
    double power = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const Complex c = r.complex_normal();
        mean += c.real();
        power += std::norm(c);
    }
    CHECK(std::abs(mean / n) < 0.02);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.03));
    CHECK(derive_seed(1, 2) != derive_seed(1, 3));
    CHECK(derive_seed(1, 2) == derive_seed(1, 2));
}

TEST_CASE("ula_response examples") {
    const ComplexVector a0 = ula_response(4, 0.0, 0.5);
    for (int t = 0; t < 4; ++t) {
        CHECK(std::abs(a0(t) - Complex(0.5, 0.0)) < 1e-15);
    }
    const ComplexVector a1 = ula_response(4, std::numbers::pi / 2, 0.5);
    for (int t = 0; t < 4; ++t) {
        CHECK(std::abs(a1(t) - Complex(t % 2 == 0 ? 0.5 : -0.5, 0.0)) < 1e-12);
    }
    Rng r(3);
    for (int k = 0; k < 20; ++k) {
        const double phi = r.phase();
        CHECK(ula_response(8, phi, 0.5).norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((ula_response(8, phi, 0.5) - ula_response(8, phi + 2 * std::numbers::pi, 0.5))
                  .norm() <= 1e-12);
    }
}

TEST_CASE("single-path channel has rank one") {
    const LinkChannel c = draw_channel(8, 6, 1, 0.5, 11);
    Eigen::JacobiSVD<ComplexMatrix> svd(c.h);
    const auto& s = svd.singularValues();
    CHECK(s(0) > 0.0);
    CHECK(s(1) <= 1e-12 * s(0));
}

TEST_CASE("channel power matches T*R on average") {
    const int n = 2000;
    double total = 0.0;
    Complex entry_mean = 0.0;
    for (int s = 0; s < n; ++s) {
        const LinkChannel c = draw_channel(16, 8, 15, 0.5, derive_seed(99, s));
        total += c.h.squaredNorm();
        entry_mean += c.h(0, 0);
    }
    CHECK(total / n == doctest::Approx(128.0).epsilon(0.05));
    CHECK(std::abs(entry_mean / static_cast<double>(n)) < 0.1);
}

TEST_CASE("channel draws are bit-identical for the same seed") {
    const LinkChannel a = draw_channel(16, 8, 15, 0.5, 5);
    const LinkChannel b = draw_channel(16, 8, 15, 0.5, 5);
    CHECK(a.h == b.h);
    const LinkChannel c = draw_channel(16, 8, 15, 0.5, 6);
    CHECK_FALSE(a.h == c.h);
}

TEST_CASE("build_scenario shapes, PU rank and pass-through") {
    SystemConfig cfg = fixture::sized(64, 16);
    cfg.i_max = 0.37;
    cfg.p_max = 2.5;
    const ScenarioChannels sc = build_scenario(cfg, 17);
    CHECK(sc.h_ss.rows() == 64);
    CHECK(sc.h_ss.cols() == 16);
    CHECK(sc.h_ps.rows() == cfg.rx_antennas_p);
    CHECK(sc.h_ps.cols() == 16);
    CHECK(sc.h_sp_tilde.rows() == 64);
    CHECK(sc.h_sp_tilde.cols() == 4);
    CHECK(sc.config.i_max == 0.37);
    CHECK(sc.config.p_max == 2.5);
    CHECK(sc.f_p.squaredNorm() == doctest::Approx(2.5).epsilon(1e-12));
    Eigen::JacobiSVD<ComplexMatrix> svd(sc.h_sp_tilde);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) {
        rank += svd.singularValues()(i) > 1e-10 * svd.singularValues()(0);
    }
    CHECK(rank <= 4);
    CHECK((sc.f_p.adjoint() * sc.f_p / 2.5 * 4.0 - ComplexMatrix::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("scenario fingerprint is reproducible and pinned") {
    SystemConfig cfg;  // 64 x 16, N_p = 15, d/lambda = 0.5
    const ScenarioChannels a = build_scenario(cfg, 2024);
    const ScenarioChannels b = build_scenario(cfg, 2024);
    CHECK(scenario_fingerprint(a) == scenario_fingerprint(b));
    CHECK(scenario_fingerprint(a) != scenario_fingerprint(build_scenario(cfg, 2025)));
    // Golden value recorded from the first run; changes mean the RNG stream
    // or channel construction changed.
    CHECK(scenario_fingerprint(a) == 0x6e185917262b9378ULL);
}

TEST_CASE("with_noise only changes the noise level") {
    const ScenarioChannels a = build_scenario(fixture::sized(16, 8), 3);
    const ScenarioChannels b = with_noise(a, 0.01);
    CHECK(b.config.sigma_n_sq == 0.01);
    CHECK(a.h_ss == b.h_ss);
    CHECK(a.h_sp_tilde == b.h_sp_tilde);
}

TEST_CASE("config validation") {
    SystemConfig c;
    CHECK_NOTHROW(c.validate());
    c.streams_s = 5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SystemConfig{};
    c.rf_chains_tx = 17;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SystemConfig{};
    c.streams_p = 16;  // > N_p = 15
    CHECK_THROWS_AS(build_scenario(c, 1), ConfigError);
    c = SystemConfig{};
    c.sigma_n_sq = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = SystemConfig{};
    c.sigma_s_sq = 2.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "cogbf/digital.hpp"
#include "cogbf/hybrid_mi.hpp"
#include "cogbf/metrics.hpp"
#include "cogbf/projections.hpp"
#include "cogbf/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cogbf;

namespace {

void check_precoder(const ScenarioChannels& sc, const HybridPrecoder& p) {
    CHECK(max_modulus_deviation(p.f_rf) <= 1e-12);
    const LinkReport r = audit(sc, p.combined());
    CHECK(r.power_violation <= 1e-9);
    CHECK(r.interference_violation <= 1e-9);
}

}  // namespace

TEST_CASE("Z-gradient matches central finite differences") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        SystemConfig cfg = fixture::sized(8, 6, 2, 2);
        const ScenarioChannels sc = build_scenario(cfg, s);
        const MiProblem prob(sc);
        const ComplexMatrix z = fixture::gaussian(6, 2, derive_seed(s, 1)) * 0.3;
        const ComplexMatrix x = fixture::gaussian(6, 2, derive_seed(s, 2)) * 0.3;
        const ComplexMatrix lambda = fixture::gaussian(6, 2, derive_seed(s, 3));
        const double alpha = 10.0;
        const ComplexMatrix g = prob.gradient(z, x, lambda, alpha);
        const ComplexMatrix fd = oracle::fd_gradient(
            [&](const ComplexMatrix& zz) { return prob.lagrangian(zz, x, lambda, alpha); }, z);
        CHECK((g - fd).norm() <= 1e-5 * fd.norm());
    }
}

TEST_CASE("inner solve with a zero channel converges to the projection of the product") {
    const ScenarioChannels base = build_scenario(fixture::sized(8, 6, 2, 2), 4);
    const ScenarioChannels sc = fixture::manual(ComplexMatrix::Zero(8, 6), base.h_ps,
                                                base.h_sp_tilde, 0.1, 1.0, 0.2);
    const MiProblem prob(sc);
    Rng rng(5);
    const ComplexMatrix f_rf = rng.unit_modulus_matrix(6, 2);
    const ComplexMatrix f_bb = rng.complex_normal_matrix(2, 2);
    const ComplexMatrix lambda = ComplexMatrix::Zero(6, 2);
    const InnerResult r = inner_projected_gradient(prob, ComplexMatrix::Zero(6, 2), f_rf, f_bb,
                                                   lambda, 10.0, 1e-2, 1e-28, 100000);
    const ComplexMatrix expected = project_onto_S(f_rf * f_bb, {sc.h_ps, 1.0, 0.2}).x;
    CHECK((r.z - expected).norm() <= 1e-8);
}

TEST_CASE("a dominant penalty pins Z to a feasible product") {
    const ScenarioChannels sc = build_scenario(fixture::sized(8, 6, 2, 2), 8);
    const MiProblem prob(sc);
    Rng rng(9);
    const ComplexMatrix f_rf = rng.unit_modulus_matrix(6, 2);
    ComplexMatrix f_bb = rng.complex_normal_matrix(2, 2);
    const ComplexMatrix x0 = f_rf * f_bb;
    f_bb *= 0.5 * std::sqrt(std::min(1.0 / x0.squaredNorm(), 1.0 / (sc.h_ps * x0).squaredNorm()));
    const ComplexMatrix x = f_rf * f_bb;
    const InnerResult r = inner_projected_gradient(prob, ComplexMatrix::Zero(6, 2), f_rf, f_bb,
                                                   ComplexMatrix::Zero(6, 2), 1e6, 1e-7, 1e-30,
                                                   20000);
    CHECK((r.z - x).norm() <= 1e-4 * x.norm());
}

TEST_CASE("inner iterates stay inside S") {
    const ScenarioChannels sc = build_scenario(fixture::sized(16, 8), 10);
    const MiProblem prob(sc);
    Rng rng(11);
    const ComplexMatrix f_rf = rng.unit_modulus_matrix(8, 4);
    const ComplexMatrix f_bb = rng.complex_normal_matrix(4, 4);
    ComplexMatrix z = rng.complex_normal_matrix(8, 4);
    const ComplexMatrix lambda = rng.complex_normal_matrix(8, 4);
    for (int step = 0; step < 50; ++step) {
        z = inner_projected_gradient(prob, z, f_rf, f_bb, lambda, 10.0, 1e-3, 0.0, 1).z;
        CHECK(z.squaredNorm() <= sc.config.p_max * (1 + 1e-9));
        CHECK((sc.h_ps * z).squaredNorm() <= sc.config.i_max * (1 + 1e-9));
    }
}

TEST_CASE("solve_hybrid_mi returns a feasible, reproducible precoder") {
    const ScenarioChannels sc = build_scenario(fixture::sized(16, 8), 12);
    const AdmmConfig cfg;
    const auto a = solve_hybrid_mi(sc, cfg, 99);
    const auto b = solve_hybrid_mi(sc, cfg, 99);
    check_precoder(sc, a.solution);
    CHECK(a.solution.f_rf == b.solution.f_rf);
    CHECK(a.solution.f_bb == b.solution.f_bb);
    CHECK(a.trace.size() == b.trace.size());
    CHECK(a.trace.size() >= 1);
    CHECK(a.trace.size() <= 500);
    CHECK(a.solution.f_rf.rows() == 8);
    CHECK(a.solution.f_rf.cols() == 4);
    CHECK(a.solution.f_bb.rows() == 4);
    CHECK(a.solution.f_bb.cols() == 4);
    for (const auto& it : a.trace.iterations) {
        CHECK(it.inner_iterations >= 1);
    }
}

TEST_CASE("fully connected hybrid precoder approaches the digital benchmark") {
    // N_st = T_s, N_sr = R_s on 8x4 links; both evaluated with the digital MMSE receiver.
    double worst = 0.0;
    for (std::uint64_t s = 1; s <= 20; ++s) {
        SystemConfig cfg = fixture::sized(8, 4, 4, 4);
        cfg.rf_chains_rx = 8;
        const ScenarioChannels sc = build_scenario(cfg, s);
        const DigitalSolution d = solve_digital_precoder(sc);
        const double se_d = evaluate_link(sc, d.f_d, digital_mmse_postcoder(sc, d.f_d)).spectral_efficiency;
        const auto res = solve_hybrid_mi(sc, AdmmConfig{}, derive_seed(s, 102));
        check_precoder(sc, res.solution);
        const ComplexMatrix f = res.solution.combined();
        const double se_h = evaluate_link(sc, f, digital_mmse_postcoder(sc, f)).spectral_efficiency;
        CHECK(se_h <= se_d + 1e-6);
        worst = std::max(worst, (se_d - se_h) / se_d);
    }
    MESSAGE("worst relative SE shortfall: " << worst);
    CHECK(worst <= 0.05);
}

TEST_CASE("stationarity residual vanishes at an exact constrained optimum") {
    // With Lambda = 0 the Z-problem is the digital problem restricted to L_s
    // columns; the rank-capped digital optimum is stationary when its rank fits.
    const ScenarioChannels sc = build_scenario(fixture::sized(16, 8), 14);
    const DigitalSolution d = solve_digital_precoder(sc);
    if (d.f_d.cols() <= 4) {
        const MiProblem prob(sc);
        const ComplexMatrix z = rank_capped_precoder(d, 4);
        CHECK(mi_stationarity_residual(prob, z, ComplexMatrix::Zero(8, 4), 1e-3) <= 1e-6);
    }
}

TEST_CASE("invalid configuration is rejected") {
    AdmmConfig c;
    c.alpha = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = AdmmConfig{};
    c.n_max = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

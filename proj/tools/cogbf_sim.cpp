// SPDX-License-Identifier: Apache-2.0
// cogbf_sim: Monte Carlo sweeps and single-trial inspection.
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cogbf/diagnostics.hpp"
#include "cogbf/digital.hpp"
#include "cogbf/harness.hpp"
#include "cogbf/rng.hpp"

namespace {

using namespace cogbf;

std::vector<Method> parse_methods(const std::string& list) {
    std::vector<Method> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(method_from_string(item));
        }
    }
    return out;
}

void print_report(const LinkReport& r) {
    std::printf("spectral_efficiency    %.10g\n", r.spectral_efficiency);
    std::printf("tx_power               %.10g\n", r.tx_power);
    std::printf("interference_power     %.10g\n", r.interference_power);
    std::printf("power_violation        %.3g\n", r.power_violation);
    std::printf("interference_violation %.3g\n", r.interference_violation);
    std::printf("postcoder_rank         %d\n", r.postcoder_rank);
}

void print_trace(const char* label, const AdmmTrace& trace) {
    const ConvergenceAudit a = audit_convergence(trace);
    std::printf("\n%s: %zu iterations, %s\n", label, trace.size(),
                std::string(to_string(trace.termination)).c_str());
    std::printf("audit: bounded_multiplier=%d summable_diffs=%d residual_vanishing=%d\n",
                a.bounded_multiplier, a.summable_diffs, a.residual_vanishing);
    std::printf("%6s %14s %14s %14s %14s %6s\n", "iter", "primal_res", "aux_change",
                "lagrangian", "mult_norm", "inner");
    for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
        const auto& it = trace.iterations[i];
        std::printf("%6zu %14.6e %14.6e %14.6e %14.6e %6d\n", i + 1, it.primal_residual,
                    it.aux_change, it.lagrangian, it.multiplier_norm, it.inner_iterations);
    }
}

// Seeds match run_trial, so passing a record's seed reproduces that record.
int run_single(const SweepSpec& spec, std::uint64_t seed, double snr_db, Method method) {
    SystemConfig sys = spec.system;
    sys.sigma_n_sq = noise_variance_for_snr(sys.p_max, snr_db);
    const ScenarioChannels sc = build_scenario(sys, seed);
    std::printf("method %s, seed %llu, snr %.6g dB, sigma_n^2 %.6g\n",
                std::string(to_string(method)).c_str(), static_cast<unsigned long long>(seed),
                snr_db, sys.sigma_n_sq);

    const std::uint64_t solver_seed = derive_seed(seed, 101 + static_cast<int>(method));
    if (method == Method::Digital) {
        const DigitalSolution d = solve_digital_precoder(sc);
        const ComplexMatrix f =
            spec.digital_rank_capped ? rank_capped_precoder(d, sys.streams_s) : d.f_d;
        const LinkReport r = evaluate_link(sc, f, digital_mmse_postcoder(sc, f));
        print_report(r);
        std::printf("\nclosed form: duality_gap %.3e, lambda1 %.6g, lambda2 %.6g\n",
                    d.duality_gap, d.lambda1, d.lambda2);
        return 0;
    }
    AdmmResult<HybridPrecoder> tx;
    if (method == Method::HybridMi) {
        tx = solve_hybrid_mi(sc, spec.admm, solver_seed);
    } else {
        tx = solve_hybrid_frobenius(sc, solve_digital_precoder(sc), spec.frob, solver_seed);
    }
    const ComplexMatrix f = tx.solution.combined();
    if (spec.receiver == Receiver::HybridMmse) {
        const auto rx = solve_hybrid_postcoder(sc, f, spec.rx, derive_seed(solver_seed, 7));
        print_report(evaluate_link(sc, f, rx.solution.combined()));
        print_trace("precoder", tx.trace);
        print_trace("postcoder", rx.trace);
    } else {
        print_report(evaluate_link(sc, f, digital_mmse_postcoder(sc, f)));
        print_trace("precoder", tx.trace);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid precoding sweeps for an underlay cognitive-radio MIMO link"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    int trials = 0;
    std::uint64_t seed = 0;
    std::string methods;
    std::string snr;
    int threads = -1;

    auto* sweep = app.add_subcommand("sweep", "Run a seeded Monte Carlo sweep");
    sweep->add_option("--config", config_path, "JSON sweep spec")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--trials", trials, "Override number of trials")->check(CLI::PositiveNumber);
    auto* sweep_seed = sweep->add_option("--seed", seed, "Override base seed");
    sweep->add_option("--methods", methods, "Comma-separated subset of digital,hybrid-mi,hybrid-frob");
    sweep->add_option("--snr", snr, "SNR grid a:b:step in dB");
    sweep->add_option("--threads", threads, "Worker threads (0 = all cores)");

    double single_snr = 10.0;
    std::string single_method;
    auto* single = app.add_subcommand("single", "Run one trial and print its trace");
    single->add_option("--config", config_path, "JSON sweep spec")->required();
    single->add_option("--seed", seed, "Scenario seed")->required();
    single->add_option("--snr", single_snr, "SNR in dB")->required();
    single->add_option("--method", single_method, "digital, hybrid-mi or hybrid-frob")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        SweepSpec spec = load_sweep_spec(config_path);
        if (*single) {
            spec.system.validate();
            return run_single(spec, seed, single_snr, method_from_string(single_method));
        }
        if (trials > 0) spec.num_trials = trials;
        if (*sweep_seed) spec.seed = seed;
        if (!methods.empty()) spec.methods = parse_methods(methods);
        if (!snr.empty()) spec.snr_grid_db = parse_snr_range(snr);
        if (threads >= 0) spec.threads = threads;

        const SweepResult result = run_sweep(spec);
        const auto path = export_result(
            result, format == "json" ? ExportFormat::Json : ExportFormat::Csv, out_dir);
        for (const auto& p : result.points) {
            std::printf("%-12s snr %6.2f dB  SE %.4f +/- %.4f  (%d ok, %d failed)\n",
                        std::string(to_string(p.method)).c_str(), p.snr_db, p.mean_se,
                        p.stderr_se, p.trials, p.failures);
        }
        for (const auto& r : result.records) {
            if (r.failed) {
                std::fprintf(stderr, "failed: %s trial %d snr %g: %s\n",
                             std::string(to_string(r.method)).c_str(), r.trial, r.snr_db,
                             r.error.c_str());
            }
        }
        std::printf("wrote %s\n", path.string().c_str());
        return result.failed_trials() == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

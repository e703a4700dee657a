// SPDX-License-Identifier: Apache-2.0
//
// Seeded Monte Carlo sweeps over SNR comparing the digital benchmark and the
// two hybrid designs, with CSV/JSON persistence.
//
// SNR convention: SNR = P_max / sigma_n^2 with unit symbol variance, i.e.
// sigma_n^2 = P_max * 10^(-SNR_dB / 10).
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cogbf/channel.hpp"
#include "cogbf/hybrid_frob.hpp"
#include "cogbf/hybrid_mi.hpp"
#include "cogbf/hybrid_rx.hpp"
#include "cogbf/metrics.hpp"

namespace cogbf {

enum class Method { Digital, HybridMi, HybridFrob };
enum class Receiver { DigitalMmse, HybridMmse };

std::string_view to_string(Method m);
std::string_view to_string(Receiver r);
Method method_from_string(std::string_view s);
Receiver receiver_from_string(std::string_view s);

struct SweepSpec {
    SystemConfig system;
    std::vector<double> snr_grid_db{10.0};
    int num_trials = 100;
    std::vector<Method> methods{Method::Digital, Method::HybridMi, Method::HybridFrob};
    Receiver receiver = Receiver::HybridMmse;
    std::uint64_t seed = 1;
    AdmmConfig admm;
    RxConfig rx;
    FrobConfig frob;
    /// Evaluate the digital benchmark with only its L_s strongest directions.
    bool digital_rank_capped = false;
    /// Worker threads; 0 means hardware concurrency.
    int threads = 0;

    void validate() const;
};

/// Convergence summary of one solver run, including the audit verdicts.
struct ConvergenceSummary {
    int iterations = 0;
    std::string termination;  ///< tolerances-met, n_max-reached, closed-form, failed
    bool bounded_multiplier = false;
    bool summable_diffs = false;
    bool residual_vanishing = false;
};

struct TrialRecord {
    Method method = Method::Digital;
    double snr_db = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;
    LinkReport report;
    ConvergenceSummary precoder;
    ConvergenceSummary postcoder;
    bool failed = false;
    std::string error;
    double solve_seconds = 0.0;
};

struct SweepPoint {
    Method method = Method::Digital;
    double snr_db = 0.0;
    double mean_se = 0.0;
    double stderr_se = 0.0;
    int trials = 0;
    int failures = 0;
};

struct Provenance {
    std::string spec_hash;
    std::uint64_t seed = 0;
    std::string build;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<TrialRecord> records;  ///< ordered by method, SNR, trial
    std::vector<SweepPoint> points;    ///< ordered by method, SNR
    Provenance provenance;

    int failed_trials() const;
};

/// Seed of trial t: base ^ splitmix64(t). Shared by every method and SNR
/// point so comparisons are paired on identical channels.
std::uint64_t trial_seed(std::uint64_t base, int trial);

/// sigma_n^2 = P_max * 10^(-snr_db / 10).
double noise_variance_for_snr(double p_max, double snr_db);

/// Parses "a:b:step" (inclusive of b when it lands on the grid).
std::vector<double> parse_snr_range(std::string_view text);

/// Runs one trial for all methods at one SNR point. Exposed for the CLI.
std::vector<TrialRecord> run_trial(const SweepSpec& spec, int trial, double snr_db);

SweepResult run_sweep(const SweepSpec& spec);

/// Recomputes per-point aggregates from the per-trial records.
std::vector<SweepPoint> aggregate(const SweepSpec& spec, const std::vector<TrialRecord>& records);

enum class ExportFormat { Csv, Json };

std::string to_csv(const SweepResult& result);
nlohmann::json to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepSpec& spec);
/// Fields absent from the JSON keep their defaults.
SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

/// Writes <dir>/sweep.csv or <dir>/sweep.json and returns the path.
/// Throws Error naming the path on I/O failure.
std::filesystem::path export_result(const SweepResult& result, ExportFormat format,
                                    const std::filesystem::path& dir);

bool operator==(const SweepSpec& a, const SweepSpec& b);
bool operator==(const SweepResult& a, const SweepResult& b);

}  // namespace cogbf

// SPDX-License-Identifier: Apache-2.0
#include "cogbf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "cogbf/diagnostics.hpp"
#include "cogbf/digital.hpp"
#include "cogbf/rng.hpp"

#ifndef COGBF_VERSION
#define COGBF_VERSION "0.1.0"
#endif

namespace cogbf {

using nlohmann::json;

namespace {

constexpr double kViolationTol = 1e-9;

std::uint64_t method_tag(Method m) {
    switch (m) {
        case Method::Digital: return 101;
        case Method::HybridMi: return 102;
        case Method::HybridFrob: return 103;
    }
    return 0;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
    return buf;
}

ConvergenceSummary summarize(const AdmmTrace& trace) {
    ConvergenceSummary s;
    s.iterations = static_cast<int>(trace.size());
    s.termination = std::string(to_string(trace.termination));
    if (!trace.empty()) {
        const ConvergenceAudit a = audit_convergence(trace);
        s.bounded_multiplier = a.bounded_multiplier;
        s.summable_diffs = a.summable_diffs;
        s.residual_vanishing = a.residual_vanishing;
    }
    return s;
}

ConvergenceSummary closed_form_summary() {
    ConvergenceSummary s;
    s.termination = "closed-form";
    s.bounded_multiplier = s.summable_diffs = s.residual_vanishing = true;
    return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::Digital: return "digital";
        case Method::HybridMi: return "hybrid-mi";
        case Method::HybridFrob: return "hybrid-frob";
    }
    return "?";
}

std::string_view to_string(Receiver r) {
    return r == Receiver::DigitalMmse ? "digital-mmse" : "hybrid-mmse";
}

Method method_from_string(std::string_view s) {
    if (s == "digital") return Method::Digital;
    if (s == "hybrid-mi") return Method::HybridMi;
    if (s == "hybrid-frob") return Method::HybridFrob;
    throw ConfigError("unknown method '" + std::string(s) + "'");
}

Receiver receiver_from_string(std::string_view s) {
    if (s == "digital-mmse") return Receiver::DigitalMmse;
    if (s == "hybrid-mmse") return Receiver::HybridMmse;
    throw ConfigError("unknown receiver '" + std::string(s) + "'");
}

void SweepSpec::validate() const {
    system.validate();
    admm.validate();
    rx.validate();
    frob.validate();
    if (snr_grid_db.empty()) {
        throw ConfigError("SweepSpec: empty SNR grid");
    }
    if (methods.empty()) {
        throw ConfigError("SweepSpec: no methods selected");
    }
    if (num_trials < 1) {
        throw ConfigError("SweepSpec: num_trials must be >= 1");
    }
}

int SweepResult::failed_trials() const {
    return static_cast<int>(
        std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return r.failed; }));
}

std::uint64_t trial_seed(std::uint64_t base, int trial) {
    return base ^ splitmix64(static_cast<std::uint64_t>(trial));
}

double noise_variance_for_snr(double p_max, double snr_db) {
    return p_max * std::pow(10.0, -snr_db / 10.0);
}

std::vector<double> parse_snr_range(std::string_view text) {
    std::vector<double> parts;
    std::string token;
    std::istringstream in{std::string(text)};
    while (std::getline(in, token, ':')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(token, &used));
            if (used != token.size()) {
                throw std::invalid_argument(token);
            }
        } catch (const std::exception&) {
            throw ConfigError("invalid SNR range '" + std::string(text) + "'");
        }
    }
    if (parts.size() == 1) {
        return parts;
    }
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
        throw ConfigError("SNR range must be a:b:step with step > 0 and b >= a");
    }
    const int count = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        grid.push_back(parts[0] + i * parts[2]);
    }
    return grid;
}

std::vector<TrialRecord> run_trial(const SweepSpec& spec, int trial, double snr_db) {
    const std::uint64_t seed = trial_seed(spec.seed, trial);
    std::vector<TrialRecord> out;
    out.reserve(spec.methods.size());
    for (Method m : spec.methods) {
        TrialRecord r;
        r.method = m;
        r.snr_db = snr_db;
        r.trial = trial;
        r.seed = seed;
        out.push_back(r);
    }

    auto fail_all = [&out](const std::string& why) {
        for (auto& r : out) {
            r.failed = true;
            r.error = why;
            r.precoder.termination = "failed";
        }
    };

    std::optional<ScenarioChannels> scenario;
    try {
        SystemConfig sys = spec.system;
        sys.sigma_n_sq = noise_variance_for_snr(sys.p_max, snr_db);
        scenario = build_scenario(sys, seed);
    } catch (const std::exception& e) {
        fail_all(std::string("scenario: ") + e.what());
        return out;
    }

    std::optional<DigitalSolution> digital;
    double digital_seconds = 0.0;
    const bool needs_digital = std::any_of(spec.methods.begin(), spec.methods.end(), [](Method m) {
        return m == Method::Digital || m == Method::HybridFrob;
    });
    std::string digital_error;
    if (needs_digital) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            digital = solve_digital_precoder(*scenario);
        } catch (const std::exception& e) {
            digital_error = std::string("digital: ") + e.what();
        }
        digital_seconds = seconds_since(t0);
    }

    for (auto& r : out) {
        try {
            const std::uint64_t solver_seed = derive_seed(seed, method_tag(r.method));
            ComplexMatrix f;
            ComplexMatrix w;
            const auto t0 = std::chrono::steady_clock::now();
            if (r.method == Method::Digital) {
                if (!digital) {
                    throw NumericalError(digital_error);
                }
                f = spec.digital_rank_capped
                        ? rank_capped_precoder(*digital, spec.system.streams_s)
                        : digital->f_d;
                r.solve_seconds = digital_seconds;
                r.precoder = closed_form_summary();
                w = digital_mmse_postcoder(*scenario, f);
                r.postcoder = closed_form_summary();
            } else {
                AdmmResult<HybridPrecoder> res;
                if (r.method == Method::HybridMi) {
                    res = solve_hybrid_mi(*scenario, spec.admm, solver_seed);
                    r.solve_seconds = seconds_since(t0);
                } else {
                    if (!digital) {
                        throw NumericalError(digital_error);
                    }
                    res = solve_hybrid_frobenius(*scenario, *digital, spec.frob, solver_seed);
                    r.solve_seconds = seconds_since(t0) + digital_seconds;
                }
                r.precoder = summarize(res.trace);
                if (max_modulus_deviation(res.solution.f_rf) > 1e-12) {
                    throw NumericalError("analog precoder lost unit modulus");
                }
                f = res.solution.combined();
                if (spec.receiver == Receiver::HybridMmse) {
                    const auto rx = solve_hybrid_postcoder(*scenario, f, spec.rx,
                                                           derive_seed(solver_seed, 7));
                    if (max_modulus_deviation(rx.solution.w_rf) > 1e-12) {
                        throw NumericalError("analog post-coder lost unit modulus");
                    }
                    w = rx.solution.combined();
                    r.postcoder = summarize(rx.trace);
                } else {
                    w = digital_mmse_postcoder(*scenario, f);
                    r.postcoder = closed_form_summary();
                }
            }
            r.report = evaluate_link(*scenario, f, w);
            if (r.report.power_violation > kViolationTol ||
                r.report.interference_violation > kViolationTol) {
                std::ostringstream msg;
                msg << "constraint violation (power " << r.report.power_violation
                    << ", interference " << r.report.interference_violation << ")";
                throw NumericalError(msg.str());
            }
        } catch (const std::exception& e) {
            r.failed = true;
            r.error = e.what();
            r.precoder.termination = "failed";
        }
    }
    return out;
}

std::vector<SweepPoint> aggregate(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
    std::vector<SweepPoint> points;
    for (Method m : spec.methods) {
        for (double snr : spec.snr_grid_db) {
            SweepPoint p;
            p.method = m;
            p.snr_db = snr;
            double sum = 0.0;
            double sum_sq = 0.0;
            for (const auto& r : records) {
                if (r.method != m || r.snr_db != snr) {
                    continue;
                }
                if (r.failed) {
                    ++p.failures;
                    continue;
                }
                ++p.trials;
                sum += r.report.spectral_efficiency;
                sum_sq += r.report.spectral_efficiency * r.report.spectral_efficiency;
            }
            if (p.trials > 0) {
                p.mean_se = sum / p.trials;
            }
            if (p.trials > 1) {
                const double var =
                    std::max(0.0, (sum_sq - p.trials * p.mean_se * p.mean_se) / (p.trials - 1));
                p.stderr_se = std::sqrt(var / p.trials);
            }
            points.push_back(p);
        }
    }
    return points;
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t n_snr = spec.snr_grid_db.size();
    const std::size_t n_jobs = static_cast<std::size_t>(spec.num_trials) * n_snr;
    std::vector<std::vector<TrialRecord>> slots(n_jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t job = next++; job < n_jobs; job = next++) {
            const int trial = static_cast<int>(job / n_snr);
            const double snr = spec.snr_grid_db[job % n_snr];
            slots[job] = run_trial(spec, trial, snr);
        }
    };
    unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                        : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_jobs));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    // Deterministic merge: method, then SNR, then trial.
    SweepResult result;
    result.spec = spec;
    result.records.reserve(n_jobs * spec.methods.size());
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        for (std::size_t si = 0; si < n_snr; ++si) {
            for (int t = 0; t < spec.num_trials; ++t) {
                result.records.push_back(slots[static_cast<std::size_t>(t) * n_snr + si][mi]);
            }
        }
    }
    result.points = aggregate(spec, result.records);
    result.provenance.seed = spec.seed;
    result.provenance.spec_hash = hex64(fnv1a(to_json(spec).dump()));
    result.provenance.build = std::string("cogbf ") + COGBF_VERSION + " (" + __VERSION__ + ")";
    return result;
}

std::string to_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "method,snr_db,trial,seed,spectral_efficiency,tx_power,interference_power,"
           "power_violation,interference_violation,iterations,termination\n";
    for (const auto& r : result.records) {
        out << to_string(r.method) << ',' << format_double(r.snr_db) << ',' << r.trial << ','
            << r.seed << ',' << format_double(r.report.spectral_efficiency) << ','
            << format_double(r.report.tx_power) << ','
            << format_double(r.report.interference_power) << ','
            << format_double(r.report.power_violation) << ','
            << format_double(r.report.interference_violation) << ',' << r.precoder.iterations
            << ',' << r.precoder.termination << '\n';
    }
    return out.str();
}

// ---- JSON ------------------------------------------------------------------

namespace {

json system_to_json(const SystemConfig& c) {
    return json{{"tx_antennas_s", c.tx_antennas_s}, {"rx_antennas_s", c.rx_antennas_s},
                {"tx_antennas_p", c.tx_antennas_p}, {"rx_antennas_p", c.rx_antennas_p},
                {"rf_chains_tx", c.rf_chains_tx},   {"rf_chains_rx", c.rf_chains_rx},
                {"streams_s", c.streams_s},         {"streams_p", c.streams_p},
                {"sigma_s_sq", c.sigma_s_sq},       {"sigma_p_sq", c.sigma_p_sq},
                {"sigma_n_sq", c.sigma_n_sq},       {"p_max", c.p_max},
                {"i_max", c.i_max},                 {"pu_power", c.pu_power},
                {"num_paths", c.num_paths},         {"d_over_lambda", c.d_over_lambda}};
}

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        j.at(key).get_to(out);
    }
}

SystemConfig system_from_json(const json& j) {
    SystemConfig c;
    read_opt(j, "tx_antennas_s", c.tx_antennas_s);
    read_opt(j, "rx_antennas_s", c.rx_antennas_s);
    read_opt(j, "tx_antennas_p", c.tx_antennas_p);
    read_opt(j, "rx_antennas_p", c.rx_antennas_p);
    read_opt(j, "rf_chains_tx", c.rf_chains_tx);
    read_opt(j, "rf_chains_rx", c.rf_chains_rx);
    read_opt(j, "streams_s", c.streams_s);
    read_opt(j, "streams_p", c.streams_p);
    read_opt(j, "sigma_s_sq", c.sigma_s_sq);
    read_opt(j, "sigma_p_sq", c.sigma_p_sq);
    read_opt(j, "sigma_n_sq", c.sigma_n_sq);
    read_opt(j, "p_max", c.p_max);
    read_opt(j, "i_max", c.i_max);
    read_opt(j, "pu_power", c.pu_power);
    read_opt(j, "num_paths", c.num_paths);
    read_opt(j, "d_over_lambda", c.d_over_lambda);
    return c;
}

json summary_to_json(const ConvergenceSummary& s) {
    return json{{"iterations", s.iterations},
                {"termination", s.termination},
                {"bounded_multiplier", s.bounded_multiplier},
                {"summable_diffs", s.summable_diffs},
                {"residual_vanishing", s.residual_vanishing}};
}

ConvergenceSummary summary_from_json(const json& j) {
    ConvergenceSummary s;
    j.at("iterations").get_to(s.iterations);
    j.at("termination").get_to(s.termination);
    j.at("bounded_multiplier").get_to(s.bounded_multiplier);
    j.at("summable_diffs").get_to(s.summable_diffs);
    j.at("residual_vanishing").get_to(s.residual_vanishing);
    return s;
}

}  // namespace

json to_json(const SweepSpec& spec) {
    json methods = json::array();
    for (Method m : spec.methods) {
        methods.push_back(std::string(to_string(m)));
    }
    return json{
        {"system", system_to_json(spec.system)},
        {"snr_db", spec.snr_grid_db},
        {"trials", spec.num_trials},
        {"methods", methods},
        {"receiver", std::string(to_string(spec.receiver))},
        {"seed", spec.seed},
        {"admm",
         {{"alpha", spec.admm.alpha},
          {"mu", spec.admm.mu},
          {"eps_z", spec.admm.eps_z},
          {"eps_p", spec.admm.eps_p},
          {"eps_gd_initial", spec.admm.eps_gd_initial},
          {"eps_gd_floor", spec.admm.eps_gd_floor},
          {"n_max", spec.admm.n_max},
          {"gd_max_iters", spec.admm.gd_max_iters}}},
        {"rx",
         {{"beta", spec.rx.beta},
          {"eps_g", spec.rx.eps_g},
          {"eps_p2", spec.rx.eps_p2},
          {"n_max", spec.rx.n_max},
          {"init", spec.rx.init == RxInit::Dft ? "dft" : "random"}}},
        {"frob",
         {{"delta", spec.frob.delta},
          {"eps_t", spec.frob.eps_t},
          {"eps_p3", spec.frob.eps_p3},
          {"n_max", spec.frob.n_max}}},
        {"digital_rank_capped", spec.digital_rank_capped},
        {"threads", spec.threads}};
}

SweepSpec sweep_spec_from_json(const json& j) {
    SweepSpec s;
    if (j.contains("system")) {
        s.system = system_from_json(j.at("system"));
    }
    if (j.contains("snr_db")) {
        if (j.at("snr_db").is_string()) {
            s.snr_grid_db = parse_snr_range(j.at("snr_db").get<std::string>());
        } else {
            s.snr_grid_db = j.at("snr_db").get<std::vector<double>>();
        }
    }
    read_opt(j, "trials", s.num_trials);
    if (j.contains("methods")) {
        s.methods.clear();
        for (const auto& m : j.at("methods")) {
            s.methods.push_back(method_from_string(m.get<std::string>()));
        }
    }
    if (j.contains("receiver")) {
        s.receiver = receiver_from_string(j.at("receiver").get<std::string>());
    }
    read_opt(j, "seed", s.seed);
    if (j.contains("admm")) {
        const json& a = j.at("admm");
        read_opt(a, "alpha", s.admm.alpha);
        read_opt(a, "mu", s.admm.mu);
        read_opt(a, "eps_z", s.admm.eps_z);
        read_opt(a, "eps_p", s.admm.eps_p);
        read_opt(a, "eps_gd_initial", s.admm.eps_gd_initial);
        read_opt(a, "eps_gd_floor", s.admm.eps_gd_floor);
        read_opt(a, "n_max", s.admm.n_max);
        read_opt(a, "gd_max_iters", s.admm.gd_max_iters);
    }
    if (j.contains("rx")) {
        const json& r = j.at("rx");
        read_opt(r, "beta", s.rx.beta);
        read_opt(r, "eps_g", s.rx.eps_g);
        read_opt(r, "eps_p2", s.rx.eps_p2);
        read_opt(r, "n_max", s.rx.n_max);
        if (r.contains("init")) {
            const auto init = r.at("init").get<std::string>();
            if (init == "dft") {
                s.rx.init = RxInit::Dft;
            } else if (init == "random") {
                s.rx.init = RxInit::Random;
            } else {
                throw ConfigError("rx.init must be 'random' or 'dft'");
            }
        }
    }
    if (j.contains("frob")) {
        const json& f = j.at("frob");
        read_opt(f, "delta", s.frob.delta);
        read_opt(f, "eps_t", s.frob.eps_t);
        read_opt(f, "eps_p3", s.frob.eps_p3);
        read_opt(f, "n_max", s.frob.n_max);
    }
    read_opt(j, "digital_rank_capped", s.digital_rank_capped);
    read_opt(j, "threads", s.threads);
    return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open config file " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
    return sweep_spec_from_json(j);
}

json to_json(const SweepResult& result) {
    json records = json::array();
    for (const auto& r : result.records) {
        records.push_back(json{
            {"method", std::string(to_string(r.method))},
            {"snr_db", r.snr_db},
            {"trial", r.trial},
            {"seed", r.seed},
            {"spectral_efficiency", r.report.spectral_efficiency},
            {"tx_power", r.report.tx_power},
            {"interference_power", r.report.interference_power},
            {"power_violation", r.report.power_violation},
            {"interference_violation", r.report.interference_violation},
            {"postcoder_rank", r.report.postcoder_rank},
            {"precoder", summary_to_json(r.precoder)},
            {"postcoder", summary_to_json(r.postcoder)},
            {"failed", r.failed},
            {"error", r.error},
            {"solve_seconds", r.solve_seconds}});
    }
    json points = json::array();
    for (const auto& p : result.points) {
        points.push_back(json{{"method", std::string(to_string(p.method))},
                              {"snr_db", p.snr_db},
                              {"mean_se", p.mean_se},
                              {"stderr_se", p.stderr_se},
                              {"trials", p.trials},
                              {"failures", p.failures}});
    }
    return json{{"spec", to_json(result.spec)},
                {"records", records},
                {"points", points},
                {"provenance",
                 {{"spec_hash", result.provenance.spec_hash},
                  {"seed", result.provenance.seed},
                  {"build", result.provenance.build}}}};
}

SweepResult sweep_result_from_json(const json& j) {
    SweepResult out;
    out.spec = sweep_spec_from_json(j.at("spec"));
    for (const auto& jr : j.at("records")) {
        TrialRecord r;
        r.method = method_from_string(jr.at("method").get<std::string>());
        jr.at("snr_db").get_to(r.snr_db);
        jr.at("trial").get_to(r.trial);
        jr.at("seed").get_to(r.seed);
        jr.at("spectral_efficiency").get_to(r.report.spectral_efficiency);
        jr.at("tx_power").get_to(r.report.tx_power);
        jr.at("interference_power").get_to(r.report.interference_power);
        jr.at("power_violation").get_to(r.report.power_violation);
        jr.at("interference_violation").get_to(r.report.interference_violation);
        jr.at("postcoder_rank").get_to(r.report.postcoder_rank);
        r.precoder = summary_from_json(jr.at("precoder"));
        r.postcoder = summary_from_json(jr.at("postcoder"));
        jr.at("failed").get_to(r.failed);
        jr.at("error").get_to(r.error);
        jr.at("solve_seconds").get_to(r.solve_seconds);
        out.records.push_back(std::move(r));
    }
    for (const auto& jp : j.at("points")) {
        SweepPoint p;
        p.method = method_from_string(jp.at("method").get<std::string>());
        jp.at("snr_db").get_to(p.snr_db);
        jp.at("mean_se").get_to(p.mean_se);
        jp.at("stderr_se").get_to(p.stderr_se);
        jp.at("trials").get_to(p.trials);
        jp.at("failures").get_to(p.failures);
        out.points.push_back(p);
    }
    const json& pv = j.at("provenance");
    pv.at("spec_hash").get_to(out.provenance.spec_hash);
    pv.at("seed").get_to(out.provenance.seed);
    pv.at("build").get_to(out.provenance.build);
    return out;
}

std::filesystem::path export_result(const SweepResult& result, ExportFormat format,
                                    const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    const std::filesystem::path path =
        dir / (format == ExportFormat::Csv ? "sweep.csv" : "sweep.json");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    if (format == ExportFormat::Csv) {
        out << to_csv(result);
    } else {
        out << to_json(result).dump(2) << '\n';
    }
    out.flush();
    if (!out) {
        throw Error("write failed for " + path.string());
    }
    return path;
}

bool operator==(const SweepSpec& a, const SweepSpec& b) {
    return to_json(a) == to_json(b);
}

bool operator==(const SweepResult& a, const SweepResult& b) {
    return to_json(a) == to_json(b);
}

}  // namespace cogbf

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cogbf/errors.hpp"
#include "cogbf/harness.hpp"
#include "support/fixtures.hpp"

using namespace cogbf;

namespace {

SweepSpec small_spec() {
    SweepSpec s;
    s.system = fixture::sized(16, 8);
    s.snr_grid_db = {0.0, 10.0};
    s.num_trials = 3;
    s.seed = 5;
    s.threads = 2;
    return s;
}

std::size_t count_lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

const char* kHeader =
    "method,snr_db,trial,seed,spectral_efficiency,tx_power,interference_power,power_violation,"
    "interference_violation,iterations,termination\n";

}  // namespace

TEST_CASE("single digital record") {
    SweepSpec s = small_spec();
    s.methods = {Method::Digital};
    s.snr_grid_db = {10.0};
    s.num_trials = 1;
    const SweepResult r = run_sweep(s);
    REQUIRE(r.records.size() == 1);
    CHECK(r.points.size() == 1);
    CHECK(r.failed_trials() == 0);
    CHECK(r.records[0].precoder.termination == "closed-form");
}

TEST_CASE("sweeps are byte-identical across reruns and thread counts") {
    SweepSpec s = small_spec();
    const std::string a = to_csv(run_sweep(s));
    const std::string b = to_csv(run_sweep(s));
    s.threads = 1;
    const std::string c = to_csv(run_sweep(s));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(count_lines(a) == 3 * 2 * 3 + 1);
    CHECK(a.rfind(kHeader, 0) == 0);
}

TEST_CASE("empty result gives a header-only CSV") {
    SweepResult r;
    CHECK(to_csv(r) == kHeader);
}

TEST_CASE("trial seeds are shared across methods and SNR points") {
    const SweepResult r = run_sweep(small_spec());
    for (const auto& rec : r.records) {
        CHECK(rec.seed == trial_seed(5, rec.trial));
        CHECK_FALSE(rec.failed);
        CHECK(rec.report.power_violation <= 1e-9);
        CHECK(rec.report.interference_violation <= 1e-9);
    }
}

TEST_CASE("aggregates are recomputable from records") {
    const SweepResult r = run_sweep(small_spec());
    const auto again = aggregate(r.spec, r.records);
    REQUIRE(again.size() == r.points.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].mean_se == r.points[i].mean_se);
        CHECK(again[i].stderr_se == r.points[i].stderr_se);
        CHECK(again[i].trials == 3);
    }
}

TEST_CASE("JSON round trip reproduces the result") {
    const SweepResult r = run_sweep(small_spec());
    const SweepResult back = sweep_result_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back == r);
    CHECK(to_csv(back) == to_csv(r));
    CHECK(back.provenance.spec_hash == r.provenance.spec_hash);
    CHECK_FALSE(r.provenance.build.empty());
}

TEST_CASE("spec JSON round trip and partial configs") {
    SweepSpec s = small_spec();
    s.receiver = Receiver::DigitalMmse;
    s.methods = {Method::HybridFrob};
    s.rx.init = RxInit::Dft;
    CHECK(sweep_spec_from_json(to_json(s)) == s);

    const SweepSpec partial = sweep_spec_from_json(nlohmann::json::parse(
        R"({"trials": 7, "snr_db": "-5:15:5", "system": {"i_max": 0.5}})"));
    CHECK(partial.num_trials == 7);
    CHECK(partial.snr_grid_db == std::vector<double>{-5, 0, 5, 10, 15});
    CHECK(partial.system.i_max == 0.5);
    CHECK(partial.system.rx_antennas_s == 64);
    CHECK(partial.admm.alpha == 10.0);
}

TEST_CASE("SNR helpers") {
    CHECK(noise_variance_for_snr(1.0, 10.0) == doctest::Approx(0.1));
    CHECK(noise_variance_for_snr(2.0, 0.0) == doctest::Approx(2.0));
    CHECK(parse_snr_range("3") == std::vector<double>{3.0});
    CHECK(parse_snr_range("0:1:0.5") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_AS(parse_snr_range("1:0:1"), ConfigError);
    CHECK_THROWS_AS(parse_snr_range("a:b"), ConfigError);
}

TEST_CASE("export writes files and reports paths on failure") {
    const auto dir = std::filesystem::temp_directory_path() / "cogbf_export_test";
    std::filesystem::remove_all(dir);
    SweepSpec s = small_spec();
    s.methods = {Method::Digital};
    const SweepResult r = run_sweep(s);
    const auto csv = export_result(r, ExportFormat::Csv, dir);
    const auto json = export_result(r, ExportFormat::Json, dir);
    std::ifstream in(csv);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == to_csv(r));
    std::ifstream jin(json);
    CHECK(sweep_result_from_json(nlohmann::json::parse(jin)) == r);

    // a regular file where the directory should be
    const auto blocker = dir / "blocker";
    std::ofstream(blocker) << "x";
    try {
        export_result(r, ExportFormat::Csv, blocker / "sub");
        FAIL("expected an I/O error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("blocker") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("spec validation") {
    SweepSpec s = small_spec();
    s.snr_grid_db.clear();
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s = small_spec();
    s.num_trials = 0;
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    s = small_spec();
    s.methods.clear();
    CHECK_THROWS_AS(run_sweep(s), ConfigError);
    CHECK_THROWS_AS(method_from_string("analog"), ConfigError);
}

TEST_CASE("trial failures are recorded, not thrown") {
    SweepSpec s = small_spec();
    s.system.tx_antennas_p = 4;
    s.system.streams_p = 6;  // more PU streams than PU antennas
    const auto records = run_trial(s, 0, 10.0);
    REQUIRE(records.size() == s.methods.size());
    for (const auto& rec : records) {
        CHECK(rec.failed);
        CHECK(rec.precoder.termination == "failed");
        CHECK_FALSE(rec.error.empty());
    }
    SweepResult r;
    r.spec = s;
    r.records = records;
    CHECK(r.failed_trials() == 3);
    CHECK(to_csv(r).find(",failed\n") != std::string::npos);
}

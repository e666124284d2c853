// SPDX-License-Identifier: Apache-2.0
//
// onebit-sensing: blind spectrum sensing from one-bit quantized receivers
// Copyright (C) 2026 the onebit-sensing authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "onebit/commands.hpp"
#include "onebit/errors.hpp"
#include "onebit/io.hpp"

using namespace onebit;
namespace fs = std::filesystem;

namespace {

const char* kValidConfig = R"(# campaign description
schema_version = 1
m = 4
p = 2
n = 32
snr_db = -7
trials = 200
detectors = rao, onebit_emr
master_seed = 42
threshold_grid = 25
)";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("onebit_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int counter() {
        static int c = 0;
        return ++c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("config parsing") {
    const auto cfg = io::parse_config(kValidConfig);
    CHECK(cfg.schema_version == 1);
    CHECK(cfg.experiment.m == 4);
    CHECK(cfg.experiment.p == 2);
    CHECK(cfg.experiment.n == 32);
    REQUIRE(cfg.experiment.snr_db.size() == 1);
    CHECK(cfg.experiment.snr_db[0] == -7.0);
    CHECK(cfg.experiment.trials == 200);
    REQUIRE(cfg.experiment.detectors.size() == 2);
    CHECK(cfg.experiment.detectors[0] == detect::DetectorKind::Rao);
    CHECK(cfg.experiment.detectors[1] == detect::DetectorKind::OneBitEmr);
    CHECK(cfg.experiment.master_seed == 42);
    CHECK(cfg.experiment.threshold_grid == 25);
    CHECK(!cfg.experiment.pfa_target);
}

TEST_CASE("config snr grids and optional keys") {
    std::string text = kValidConfig;
    text += "pfa_target = 0.01\nworkers = 2\nrao_compensated = true\n";
    text.replace(text.find("snr_db = -7"), 11, "snr_db = -12, -10, -8");
    const auto cfg = io::parse_config(text);
    REQUIRE(cfg.experiment.snr_db.size() == 3);
    CHECK(cfg.experiment.snr_db[1] == -10.0);
    CHECK(cfg.experiment.pfa_target == 0.01);
    CHECK(cfg.experiment.workers == 2);
    CHECK(cfg.experiment.rao_compensated);
}

TEST_CASE("config rejection") {
    // master_seed is mandatory: no silent nondeterminism
    std::string no_seed = kValidConfig;
    no_seed.erase(no_seed.find("master_seed = 42"), 17);
    CHECK_THROWS_AS(io::parse_config(no_seed), invalid_input);

    CHECK_THROWS_AS(io::parse_config("schema_version = 2\n"), invalid_input);
    CHECK_THROWS_AS(io::parse_config(std::string(kValidConfig) + "bogus_key = 1\n"),
                    invalid_input);
    CHECK_THROWS_AS(io::parse_config(std::string(kValidConfig) + "m = 4\n"),
                    invalid_input); // duplicate
    std::string bad_det = kValidConfig;
    bad_det.replace(bad_det.find("detectors = rao, onebit_emr"), 27, "detectors = glrt\n#");
    CHECK_THROWS_AS(io::parse_config(bad_det), invalid_input);

    std::string zero_trials = kValidConfig;
    zero_trials.replace(zero_trials.find("trials = 200"), 12, "trials = 0  ");
    CHECK_THROWS_AS(io::parse_config(zero_trials), invalid_input);
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -0.0, 2e17}) {
        const std::string s = io::format_double(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("csv round trip") {
    io::CsvTable table;
    table.header = {"detector", "pfa", "pd"};
    table.rows = {{"rao", "0.1", "0.75"}, {"lmpit", "0.01", "0.5"}};
    const std::string text = io::to_csv(table);
    CHECK(text == "detector,pfa,pd\nrao,0.1,0.75\nlmpit,0.01,0.5\n");
    const auto parsed = io::parse_csv(text);
    CHECK(parsed.header == table.header);
    CHECK(parsed.rows == table.rows);
}

TEST_CASE("missing files map to io errors") {
    CHECK_THROWS_AS(io::read_text_file("/nonexistent/path/config.cfg"), io_error);
    CHECK(cli::guarded([] { io::read_text_file("/nonexistent/path/c.cfg"); }) == 3);
}

TEST_CASE("exit code mapping") {
    CHECK(cli::guarded([] {}) == 0);
    CHECK(cli::guarded([] { throw invalid_input("bad"); }) == 1);
    CHECK(cli::guarded([] { throw numeric_error("diverged"); }) == 2);
    CHECK(cli::guarded([] { throw fit_infeasible("moments"); }) == 2);
    CHECK(cli::guarded([] { throw io_error("disk"); }) == 3);
}

TEST_CASE("threshold command output") {
    std::ostringstream out;
    cli::cmd_threshold(8, 32, 0.01, out);
    const std::string text = out.str();
    CHECK(text.find("beta_gamma=") != std::string::npos);
    CHECK(text.find("chi2_gamma=") != std::string::npos);

    // thresholds strictly decrease as pfa grows
    double prev_beta = 1e300, prev_chi2 = 1e300;
    for (double pfa : {1e-12, 0.001, 0.01, 0.1, 0.5, 1.0 - 1e-12}) {
        std::ostringstream o;
        cli::cmd_threshold(8, 32, pfa, o);
        double b = 0, c = 0;
        REQUIRE(std::sscanf(o.str().c_str(), "beta_gamma=%lf\nchi2_gamma=%lf", &b, &c) == 2);
        CHECK(b < prev_beta);
        CHECK(c < prev_chi2);
        prev_beta = b;
        prev_chi2 = c;
    }
    // near-certain false alarm pushes the threshold toward the lower edge of
    // the raw support [0, n m(m-1)]
    CHECK(prev_beta < 0.01 * 32 * 8 * 7);

    CHECK_THROWS_AS(cli::cmd_threshold(8, 32, 1.5, std::cout), invalid_input);
    CHECK(cli::guarded([] {
              std::ostringstream o;
              cli::cmd_threshold(8, 32, -1.0, o);
          }) == 1);
}

TEST_CASE("roc command end to end") {
    TempDir dir;
    io::write_text_file(dir.file("roc.cfg"), kValidConfig);
    cli::cmd_roc(dir.file("roc.cfg"), dir.file("roc.csv"));

    const auto csv = io::parse_csv(io::read_text_file(dir.file("roc.csv")));
    REQUIRE(csv.header == std::vector<std::string>{"detector", "pfa", "pd"});
    CHECK(csv.rows.size() == 2 * 25); // two detectors x grid
    for (const auto& row : csv.rows) {
        CHECK((row[0] == "rao" || row[0] == "onebit_emr"));
        const double pfa = std::stod(row[1]);
        const double pd = std::stod(row[2]);
        CHECK(pfa >= 0.0);
        CHECK(pfa <= 1.0);
        CHECK(pd >= 0.0);
        CHECK(pd <= 1.0);
    }

    // sidecar echoes the campaign parameters with stable keys
    const auto sidecar =
        nlohmann::ordered_json::parse(io::read_text_file(dir.file("roc.csv.json")));
    CHECK(sidecar["command"] == "roc");
    CHECK(sidecar["config"]["m"] == 4);
    CHECK(sidecar["config"]["master_seed"] == 42);
    CHECK(!sidecar["config"].contains("workers"));

    // byte-identical re-run
    const std::string first = io::read_text_file(dir.file("roc.csv"));
    cli::cmd_roc(dir.file("roc.cfg"), dir.file("roc.csv"));
    CHECK(io::read_text_file(dir.file("roc.csv")) == first);
}

TEST_CASE("null-fit command emits finite values at the minimal n") {
    TempDir dir;
    std::string cfg = kValidConfig;
    cfg.replace(cfg.find("n = 32"), 6, "n = 2 ");
    cfg.replace(cfg.find("m = 4"), 5, "m = 8");
    io::write_text_file(dir.file("nf.cfg"), cfg);
    cli::cmd_null_fit(dir.file("nf.cfg"), dir.file("nf.csv"));
    const auto csv = io::parse_csv(io::read_text_file(dir.file("nf.csv")));
    REQUIRE(csv.header.size() == 4);
    CHECK(csv.rows.size() == 25);
    for (const auto& row : csv.rows)
        for (const auto& cell : row)
            CHECK(std::isfinite(std::stod(cell)));
    const auto sidecar =
        nlohmann::ordered_json::parse(io::read_text_file(dir.file("nf.csv.json")));
    CHECK(std::isfinite(sidecar["results"]["beta"]["cvm_error"].get<double>()));
    CHECK(std::isfinite(sidecar["results"]["chi2"]["cvm_error"].get<double>()));
}

TEST_CASE("nonnull-fit requires a non-empty SNR grid") {
    TempDir dir;
    std::string cfg = kValidConfig;
    cfg.replace(cfg.find("snr_db = -7"), 11, "snr_db =   ");
    io::write_text_file(dir.file("bad.cfg"), cfg);
    CHECK(cli::guarded([&] { cli::cmd_nonnull_fit(dir.file("bad.cfg"), dir.file("x.csv")); }) ==
          1);
}

TEST_CASE("pd-vs-snr command requires a pfa target") {
    TempDir dir;
    io::write_text_file(dir.file("pd.cfg"), kValidConfig);
    CHECK(cli::guarded([&] { cli::cmd_pd_vs_snr(dir.file("pd.cfg"), dir.file("pd.csv")); }) ==
          1);

    std::string with_pfa = std::string(kValidConfig) + "pfa_target = 0.1\n";
    io::write_text_file(dir.file("pd2.cfg"), with_pfa);
    cli::cmd_pd_vs_snr(dir.file("pd2.cfg"), dir.file("pd2.csv"));
    const auto csv = io::parse_csv(io::read_text_file(dir.file("pd2.csv")));
    CHECK(csv.rows.size() == 2); // two detectors, one SNR point
}

TEST_CASE("unreadable config maps to exit code 1, unwritable output to 3") {
    TempDir dir;
    CHECK(cli::guarded([&] { cli::cmd_roc(dir.file("missing.cfg"), dir.file("o.csv")); }) ==
          3); // missing file is an I/O failure
    io::write_text_file(dir.file("roc.cfg"), kValidConfig);
    CHECK(cli::guarded([&] {
              cli::cmd_roc(dir.file("roc.cfg"), "/nonexistent/dir/out.csv");
          }) == 3);
}

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

#include "onebit/commands.hpp"

#include <iostream>
#include <optional>

#include <json.hpp>

#include "onebit/distributions.hpp"
#include "onebit/errors.hpp"
#include "onebit/io.hpp"
#include "onebit/montecarlo.hpp"

namespace onebit::cli {

namespace {

using nlohmann::ordered_json;

ordered_json config_echo(const io::CliConfig& cfg) {
    // `workers` is deliberately omitted: it never affects the output.
    const auto& e = cfg.experiment;
    ordered_json j;
    j["schema_version"] = cfg.schema_version;
    j["m"] = e.m;
    j["p"] = e.p;
    j["n"] = e.n;
    j["snr_db"] = e.snr_db;
    j["trials"] = e.trials;
    ordered_json det = ordered_json::array();
    for (const auto kind : e.detectors)
        det.push_back(detect::to_string(kind));
    j["detectors"] = det;
    j["master_seed"] = e.master_seed;
    if (e.pfa_target)
        j["pfa_target"] = *e.pfa_target;
    j["threshold_grid"] = e.threshold_grid;
    j["rao_compensated"] = e.rao_compensated;
    return j;
}

void write_outputs(const std::string& out_path, const io::CsvTable& csv,
                   const ordered_json& sidecar) {
    io::write_text_file(out_path, io::to_csv(csv));
    io::write_text_file(out_path + ".json", sidecar.dump(2) + "\n");
}

std::vector<double> normalized_rao(const std::vector<double>& raw, int m, int n) {
    std::vector<double> out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        out[i] = detect::normalize_rao(raw[i], m, n);
    return out;
}

void require_rao(const mc::ExperimentConfig& exp, const char* command) {
    for (const auto kind : exp.detectors)
        if (kind == detect::DetectorKind::Rao)
            return;
    throw invalid_input(std::string(command) + ": config must list the 'rao' detector");
}

void require_single_snr(const mc::ExperimentConfig& exp, const char* command) {
    if (exp.snr_db.size() != 1)
        throw invalid_input(std::string(command) + ": config must contain exactly one snr_db value");
}

} // namespace

void cmd_roc(const std::string& config_path, const std::string& out_path) {
    const io::CliConfig cfg = io::load_config(config_path);
    require_single_snr(cfg.experiment, "roc");
    const mc::TrialTable table = mc::run_campaign(cfg.experiment);

    io::CsvTable csv;
    csv.header = {"detector", "pfa", "pd"};
    for (const auto& series : table.series) {
        const auto curve = mc::roc_curve(series.h0, series.h1,
                                         cfg.experiment.threshold_grid);
        for (const auto& point : curve)
            csv.rows.push_back({series.label, io::format_double(point.pfa),
                                io::format_double(point.pd)});
    }

    ordered_json sidecar;
    sidecar["command"] = "roc";
    sidecar["config"] = config_echo(cfg);
    write_outputs(out_path, csv, sidecar);
}

void cmd_null_fit(const std::string& config_path, const std::string& out_path) {
    const io::CliConfig cfg = io::load_config(config_path);
    const auto& exp = cfg.experiment;
    require_single_snr(exp, "null-fit");
    require_rao(exp, "null-fit");

    const mc::TrialTable table = mc::run_campaign(exp);
    const auto samples = normalized_rao(table.find("rao").h0, exp.m, exp.n);

    const dist::MomentPair null_mp = dist::null_moments(exp.m, exp.n);
    const auto grid = mc::fit_threshold_grid(null_mp.mean, std::sqrt(null_mp.variance),
                                             exp.threshold_grid);
    const auto empirical = mc::empirical_cdf(samples, grid);

    const dist::BetaFit beta = dist::null_beta_params(exp.m, exp.n);
    const int dof = exp.m * exp.m - exp.m;
    const double raw_scale = static_cast<double>(exp.n) * exp.m * (exp.m - 1);
    std::vector<double> beta_cdf_values(grid.size());
    std::vector<double> chi2_cdf_values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        beta_cdf_values[i] = dist::beta_cdf(grid[i], beta);
        chi2_cdf_values[i] = dist::chi2_cdf(grid[i] * raw_scale, dof);
    }
    const double cvm_beta = mc::cvm_error(empirical, beta_cdf_values);
    const double cvm_chi2 = mc::cvm_error(empirical, chi2_cdf_values);

    io::CsvTable csv;
    csv.header = {"threshold", "empirical_pfa", "beta_pfa", "chi2_pfa"};
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv.rows.push_back({io::format_double(grid[i]),
                            io::format_double(1.0 - empirical[i]),
                            io::format_double(1.0 - beta_cdf_values[i]),
                            io::format_double(1.0 - chi2_cdf_values[i])});

    ordered_json sidecar;
    sidecar["command"] = "null-fit";
    sidecar["config"] = config_echo(cfg);
    sidecar["results"]["beta"] = {{"alpha", beta.alpha},
                                  {"beta", beta.beta},
                                  {"cvm_error", cvm_beta}};
    sidecar["results"]["chi2"] = {{"dof", dof}, {"cvm_error", cvm_chi2}};
    write_outputs(out_path, csv, sidecar);
}

void cmd_nonnull_fit(const std::string& config_path, const std::string& out_path) {
    const io::CliConfig cfg = io::load_config(config_path);
    const auto& exp = cfg.experiment;
    require_rao(exp, "nonnull-fit");

    const int dof = exp.m * exp.m - exp.m;
    const double raw_scale = static_cast<double>(exp.n) * exp.m * (exp.m - 1);

    io::CsvTable csv;
    csv.header = {"snr_db", "threshold", "empirical_pd", "beta_pd", "chi2_pd"};
    ordered_json per_snr = ordered_json::array();

    for (const double snr : exp.snr_db) {
        const mc::TrialTable table = mc::run_campaign(exp, snr);
        const auto samples = normalized_rao(table.find("rao").h1, exp.m, exp.n);

        const dist::MomentPair moments = dist::h1_moments(
            model::expanded_coherence(table.signal_model.coherence), exp.m, exp.n);
        const auto grid = mc::fit_threshold_grid(moments.mean,
                                                 std::sqrt(std::max(moments.variance, 0.0)),
                                                 exp.threshold_grid);
        const auto empirical = mc::empirical_cdf(samples, grid);
        std::optional<dist::BetaFit> beta;
        std::string beta_failure;
        try {
            beta = dist::beta_from_moments(moments);
        } catch (const fit_infeasible& e) {
            beta_failure = e.what();
        }
        const double delta2 = dist::noncentrality(table.signal_model.theta, exp.n,
                                                  dist::AdcResolution::OneBit);

        std::vector<double> beta_cdf_values(grid.size(), 0.0);
        std::vector<double> chi2_cdf_values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (beta)
                beta_cdf_values[i] = dist::beta_cdf(grid[i], *beta);
            chi2_cdf_values[i] = dist::nc_chi2_cdf(grid[i] * raw_scale, dof, delta2);
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv.rows.push_back(
                {io::format_double(snr), io::format_double(grid[i]),
                 io::format_double(1.0 - empirical[i]),
                 beta ? io::format_double(1.0 - beta_cdf_values[i]) : std::string(),
                 io::format_double(1.0 - chi2_cdf_values[i])});

        ordered_json entry;
        entry["snr_db"] = snr;
        entry["mean"] = moments.mean;
        entry["variance"] = moments.variance;
        if (beta)
            entry["beta"] = {{"alpha", beta->alpha},
                             {"beta", beta->beta},
                             {"cvm_error", mc::cvm_error(empirical, beta_cdf_values)}};
        else
            entry["beta"] = {{"infeasible", beta_failure}};
        entry["chi2"] = {{"dof", dof},
                         {"delta2", delta2},
                         {"cvm_error", mc::cvm_error(empirical, chi2_cdf_values)}};
        per_snr.push_back(entry);
    }

    ordered_json sidecar;
    sidecar["command"] = "nonnull-fit";
    sidecar["config"] = config_echo(cfg);
    sidecar["results"]["per_snr"] = per_snr;
    write_outputs(out_path, csv, sidecar);
}

void cmd_pd_vs_snr(const std::string& config_path, const std::string& out_path) {
    const io::CliConfig cfg = io::load_config(config_path);
    const auto& exp = cfg.experiment;
    if (!exp.pfa_target)
        throw invalid_input("pd-vs-snr: config must set pfa_target");

    const mc::PdSnrResult result = mc::pd_vs_snr(exp, *exp.pfa_target);

    io::CsvTable csv;
    csv.header = {"detector", "snr_db", "pd"};
    for (const auto& curve : result.curves)
        for (std::size_t i = 0; i < result.snr_db.size(); ++i)
            csv.rows.push_back({curve.label, io::format_double(result.snr_db[i]),
                                io::format_double(curve.pd[i])});

    ordered_json sidecar;
    sidecar["command"] = "pd-vs-snr";
    sidecar["config"] = config_echo(cfg);
    write_outputs(out_path, csv, sidecar);
}

void cmd_threshold(int m, int n, double pfa, std::ostream& out) {
    if (!(pfa > 0.0 && pfa < 1.0))
        throw invalid_input("threshold: pfa must lie in (0, 1)");
    const dist::BetaFit beta = dist::null_beta_params(m, n);
    const dist::Chi2Fit chi2{m * m - m, 0.0};
    out << "beta_gamma=" << io::format_double(dist::pfa_threshold(pfa, beta, m, n))
        << "\n"
        << "chi2_gamma=" << io::format_double(dist::pfa_threshold(pfa, chi2)) << "\n";
}

int guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace onebit::cli

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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "onebit/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"One-bit blind spectrum sensing: detectors, theoretical fits, "
                 "and Monte-Carlo campaigns"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int m = 8;
    int n = 0;
    double pfa = 0.01;

    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "campaign config file")->required();
        cmd->add_option("--out", out_path, "output CSV path (sidecar: <out>.json)")
            ->required();
    };

    auto* roc = app.add_subcommand("roc", "empirical ROC curves per detector");
    add_io(roc);
    auto* null_fit =
        app.add_subcommand("null-fit", "noise-only Pfa curves: empirical vs Beta vs chi2");
    add_io(null_fit);
    auto* nonnull_fit = app.add_subcommand(
        "nonnull-fit", "signal-present Pd curves: empirical vs Beta vs noncentral chi2");
    add_io(nonnull_fit);
    auto* pd_snr =
        app.add_subcommand("pd-vs-snr", "detection probability over an SNR grid");
    add_io(pd_snr);

    auto* threshold =
        app.add_subcommand("threshold", "raw-scale thresholds for a target Pfa");
    threshold->add_option("--m", m, "antenna count")->required();
    threshold->add_option("--n", n, "snapshot count")->required();
    threshold->add_option("--pfa", pfa, "target false-alarm probability")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    using onebit::cli::guarded;
    if (roc->parsed())
        return guarded([&] { onebit::cli::cmd_roc(config_path, out_path); });
    if (null_fit->parsed())
        return guarded([&] { onebit::cli::cmd_null_fit(config_path, out_path); });
    if (nonnull_fit->parsed())
        return guarded([&] { onebit::cli::cmd_nonnull_fit(config_path, out_path); });
    if (pd_snr->parsed())
        return guarded([&] { onebit::cli::cmd_pd_vs_snr(config_path, out_path); });
    if (threshold->parsed())
        return guarded([&] { onebit::cli::cmd_threshold(m, n, pfa, std::cout); });
    return 1;
}

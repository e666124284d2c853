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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "onebit/detectors.hpp"
#include "onebit/model.hpp"

namespace onebit::mc {

/// Full description of a Monte-Carlo campaign. All randomness derives from
/// `master_seed`; `workers` only changes the execution schedule, never the
/// results.
struct ExperimentConfig {
    int m = 8;
    int p = 5;
    int n = 0;
    std::vector<double> snr_db;
    long trials = 0;
    std::vector<detect::DetectorKind> detectors;
    std::uint64_t master_seed = 0;
    std::optional<double> pfa_target;
    int threshold_grid = 200;
    int workers = 0;              // 0 = hardware concurrency
    bool rao_compensated = false; // add a Rao series with ceil(2.47 n) snapshots
};

/// Throws invalid_input on out-of-range fields.
void validate(const ExperimentConfig& config);

/// One detector's statistic arrays over a campaign. `label` distinguishes
/// extra series such as the oversampled Rao run.
struct Series {
    detect::DetectorKind kind;
    int n = 0;
    std::string label;
    std::vector<double> h0;
    std::vector<double> h1;
};

struct TrialTable {
    ExperimentConfig config;
    double snr_db = 0.0;
    Eigen::MatrixXcd channel;
    model::PopulationModel noise_model;
    model::PopulationModel signal_model;
    std::vector<Series> series;

    const Series& find(const std::string& label) const;
};

/// Run one campaign at a single SNR point. Per-trial substreams are derived
/// from (master_seed, trial index), so the outputs are independent of worker
/// count and identical across re-runs. The channel is drawn once from the
/// master seed and fixed for the whole campaign; all detectors in a trial
/// see the same snapshots.
TrialTable run_campaign(const ExperimentConfig& config, double snr_db);

/// Convenience overload for configs with exactly one SNR point.
TrialTable run_campaign(const ExperimentConfig& config);

/// Fraction of samples <= each threshold (right-continuous empirical CDF).
/// Thresholds must be sorted ascending.
std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& thresholds);

/// Cramer-von Mises criterion: (1/K) sum |model_cdf_i - empirical_cdf_i|^2.
double cvm_error(const std::vector<double>& empirical_cdf_values,
                 const std::vector<double>& model_cdf_values);

/// K evenly spaced points covering [lo, hi] inclusive.
std::vector<double> uniform_grid(double lo, double hi, int k);

/// Threshold grid for judging a distribution fit on the normalized statistic:
/// K points spanning [mean - 15 sd, mean + 15 sd] clipped to [0, 1], i.e. the
/// region where the CDFs actually vary. Falls back to [0, 1] when the spread
/// is degenerate.
std::vector<double> fit_threshold_grid(double mean, double sd, int k);

struct RocPoint {
    double pfa = 0.0;
    double pd = 0.0;
};

/// Sweep thresholds over the pooled sample range; pfa and pd are exceedance
/// fractions. Points are returned sorted by pfa ascending.
std::vector<RocPoint> roc_curve(const std::vector<double>& h0,
                                const std::vector<double>& h1,
                                int grid);

/// Empirical (1 - pfa) quantile of the null statistics, used as a detection
/// threshold.
double quantile_threshold(const std::vector<double>& h0, double pfa);

/// Detection probability at a fixed false-alarm target, with the threshold
/// set from the empirical null quantile.
double pd_at_pfa(const std::vector<double>& h0, const std::vector<double>& h1,
                 double pfa);

struct PdSnrCurve {
    std::string label;
    std::vector<double> pd; // one entry per SNR grid point
};

struct PdSnrResult {
    std::vector<double> snr_db;
    std::vector<PdSnrCurve> curves;
};

/// Pd-versus-SNR curves for every configured detector series at a fixed
/// false-alarm target.
PdSnrResult pd_vs_snr(const ExperimentConfig& config, double pfa_target);

} // namespace onebit::mc

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

#include "onebit/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "onebit/errors.hpp"
#include "onebit/rng.hpp"

namespace onebit::mc {

namespace {

bool needs_quantized(detect::DetectorKind kind) {
    using detect::DetectorKind;
    return kind == DetectorKind::Rao || kind == DetectorKind::Emr2 ||
           kind == DetectorKind::OneBitEmr;
}

// Series sharing a snapshot count consume one batch per hypothesis per trial.
struct SeriesGroup {
    int n = 0;
    bool want_raw = false;
    bool want_quantized = false;
    std::vector<std::size_t> series_idx;
};

double compute_statistic(const Series& series, const model::SampleBatch& quantized,
                         const detect::SampleCovariance& scm_raw,
                         const detect::SampleCovariance& scm_quantized) {
    using detect::DetectorKind;
    switch (series.kind) {
    case DetectorKind::Rao: return detect::rao_statistic(scm_quantized).value;
    case DetectorKind::Emr2: return detect::emr2_statistic(scm_quantized).value;
    case DetectorKind::OneBitEmr: return detect::onebit_emr_statistic(quantized).value;
    case DetectorKind::Lmpit: return detect::lmpit_statistic(scm_raw).value;
    case DetectorKind::InfEmr: return detect::emr2_statistic(scm_raw).value;
    }
    throw invalid_input("unknown detector kind");
}

} // namespace

void validate(const ExperimentConfig& config) {
    model::validate({config.m, config.p, std::max(config.n, 1)});
    if (config.n < 1)
        throw invalid_input("config: snapshot count n must be >= 1");
    if (config.trials < 1)
        throw invalid_input("config: trials must be >= 1");
    if (config.snr_db.empty())
        throw invalid_input("config: at least one SNR point is required");
    for (double s : config.snr_db)
        if (!std::isfinite(s))
            throw invalid_input("config: SNR values must be finite");
    if (config.detectors.empty())
        throw invalid_input("config: at least one detector is required");
    for (std::size_t i = 0; i < config.detectors.size(); ++i)
        for (std::size_t j = i + 1; j < config.detectors.size(); ++j)
            if (config.detectors[i] == config.detectors[j])
                throw invalid_input("config: duplicate detector entry");
    if (config.threshold_grid < 2)
        throw invalid_input("config: threshold grid needs at least 2 points");
    if (config.pfa_target && !(*config.pfa_target > 0.0 && *config.pfa_target < 1.0))
        throw invalid_input("config: pfa target must lie in (0, 1)");
    if (config.workers < 0)
        throw invalid_input("config: workers must be >= 0");
}

const Series& TrialTable::find(const std::string& label) const {
    for (const auto& s : series)
        if (s.label == label)
            return s;
    throw invalid_input("no series labeled '" + label + "' in trial table");
}

TrialTable run_campaign(const ExperimentConfig& config, double snr_db) {
    validate(config);

    TrialTable table;
    table.config = config;
    table.snr_db = snr_db;

    const model::ModelDims dims{config.m, config.p, config.n};
    RngStream channel_rng = RngStream::derive(config.master_seed, 0);
    table.channel = model::generate_channel(dims, channel_rng);

    const Eigen::VectorXd noise_var = Eigen::VectorXd::Ones(config.m);
    const Eigen::MatrixXcd signal_cov = model::scale_for_snr(
        Eigen::MatrixXcd::Identity(config.p, config.p), noise_var, snr_db);
    table.noise_model = model::build_population(dims, table.channel, signal_cov,
                                                noise_var, model::Hypothesis::NoiseOnly);
    table.signal_model = model::build_population(dims, table.channel, signal_cov,
                                                 noise_var, model::Hypothesis::SignalPresent);

    for (const auto kind : config.detectors)
        table.series.push_back(
            {kind, config.n, detect::to_string(kind), {}, {}});
    if (config.rao_compensated) {
        const int n2 = static_cast<int>(std::ceil(2.47 * config.n));
        table.series.push_back({detect::DetectorKind::Rao, n2, "rao_2p47n", {}, {}});
    }
    for (auto& s : table.series) {
        s.h0.resize(config.trials);
        s.h1.resize(config.trials);
    }

    std::vector<SeriesGroup> groups;
    for (std::size_t si = 0; si < table.series.size(); ++si) {
        const auto& s = table.series[si];
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const SeriesGroup& g) { return g.n == s.n; });
        if (it == groups.end()) {
            groups.push_back({s.n, false, false, {}});
            it = groups.end() - 1;
        }
        it->series_idx.push_back(si);
        if (needs_quantized(s.kind))
            it->want_quantized = true;
        else
            it->want_raw = true;
    }

    const Eigen::MatrixXcd chol_h0 = model::cholesky_factor(table.noise_model);
    const Eigen::MatrixXcd chol_h1 = model::cholesky_factor(table.signal_model);

    std::atomic<long> completed{0};
    std::mutex error_mutex;
    std::string first_error;

    const auto run_range_impl = [&](long first, long last) {
        for (long t = first; t < last; ++t) {
            for (const auto& group : groups) {
                for (int hyp = 0; hyp < 2; ++hyp) {
                    RngStream rng = RngStream::derive(
                        config.master_seed,
                        1 + 2 * static_cast<std::uint64_t>(t) + hyp,
                        static_cast<std::uint64_t>(group.n));
                    const model::SampleBatch raw = model::sample_gaussian(
                        hyp == 0 ? chol_h0 : chol_h1, group.n, rng);
                    model::SampleBatch quantized;
                    detect::SampleCovariance scm_raw, scm_quantized;
                    if (group.want_raw)
                        scm_raw = detect::scm(raw);
                    if (group.want_quantized) {
                        quantized = model::quantize(raw);
                        scm_quantized = detect::scm(quantized);
                    }
                    for (const std::size_t si : group.series_idx) {
                        auto& s = table.series[si];
                        const double value = compute_statistic(
                            s, quantized, scm_raw, scm_quantized);
                        (hyp == 0 ? s.h0 : s.h1)[t] = value;
                    }
                }
            }
            completed.fetch_add(1, std::memory_order_relaxed);
        }
    };

    const auto run_range = [&](long first, long last) {
        try {
            run_range_impl(first, last);
        } catch (const std::exception& e) {
            const std::scoped_lock lock(error_mutex);
            if (first_error.empty())
                first_error = e.what();
        }
    };

    int workers = config.workers > 0
                      ? config.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp<long>(workers, 1, config.trials);
    if (workers == 1) {
        run_range(0, config.trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const long chunk = (config.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long first = w * chunk;
            const long last = std::min<long>(first + chunk, config.trials);
            if (first >= last)
                break;
            pool.emplace_back(run_range, first, last);
        }
        for (auto& th : pool)
            th.join();
    }
    if (!first_error.empty())
        throw numeric_error("campaign aborted after " + std::to_string(completed.load()) +
                            " of " + std::to_string(config.trials) +
                            " trials: " + first_error);
    return table;
}

TrialTable run_campaign(const ExperimentConfig& config) {
    if (config.snr_db.size() != 1)
        throw invalid_input("run_campaign: config must contain exactly one SNR point");
    return run_campaign(config, config.snr_db.front());
}

std::vector<double> empirical_cdf(const std::vector<double>& samples,
                                  const std::vector<double>& thresholds) {
    if (samples.empty())
        throw invalid_input("empirical_cdf: no samples");
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw invalid_input("empirical_cdf: thresholds must be sorted ascending");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> cdf(thresholds.size());
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), thresholds[i]);
        cdf[i] = static_cast<double>(it - sorted.begin()) / sorted.size();
    }
    return cdf;
}

double cvm_error(const std::vector<double>& empirical_cdf_values,
                 const std::vector<double>& model_cdf_values) {
    if (empirical_cdf_values.size() != model_cdf_values.size() ||
        empirical_cdf_values.size() < 2)
        throw invalid_input("cvm_error: need two equal-length grids with K >= 2");
    double sum = 0.0;
    for (std::size_t i = 0; i < empirical_cdf_values.size(); ++i) {
        const double d = model_cdf_values[i] - empirical_cdf_values[i];
        sum += d * d;
    }
    return sum / empirical_cdf_values.size();
}

std::vector<double> uniform_grid(double lo, double hi, int k) {
    if (k < 2 || !(hi > lo))
        throw invalid_input("uniform_grid: need k >= 2 and hi > lo");
    std::vector<double> grid(k);
    for (int i = 0; i < k; ++i)
        grid[i] = lo + (hi - lo) * i / (k - 1);
    return grid;
}

std::vector<double> fit_threshold_grid(double mean, double sd, int k) {
    if (!(sd > 1e-12) || !std::isfinite(mean) || !std::isfinite(sd))
        return uniform_grid(0.0, 1.0, k);
    const double lo = std::max(0.0, mean - 15.0 * sd);
    const double hi = std::min(1.0, mean + 15.0 * sd);
    if (!(hi > lo))
        return uniform_grid(0.0, 1.0, k);
    return uniform_grid(lo, hi, k);
}

std::vector<RocPoint> roc_curve(const std::vector<double>& h0,
                                const std::vector<double>& h1,
                                int grid) {
    if (h0.empty() || h1.empty())
        throw invalid_input("roc_curve: both sample sets must be non-empty");
    if (grid < 2)
        throw invalid_input("roc_curve: grid must have at least 2 points");
    const auto [lo0, hi0] = std::minmax_element(h0.begin(), h0.end());
    const auto [lo1, hi1] = std::minmax_element(h1.begin(), h1.end());
    double lo = std::min(*lo0, *lo1);
    double hi = std::max(*hi0, *hi1);
    const double pad = 1e-12 * std::max(1.0, std::abs(hi)) + 1e-300;
    lo -= pad;
    hi += pad;
    std::vector<double> s0 = h0, s1 = h1;
    std::sort(s0.begin(), s0.end());
    std::sort(s1.begin(), s1.end());
    const auto exceedance = [](const std::vector<double>& s, double gamma) {
        const auto it = std::upper_bound(s.begin(), s.end(), gamma);
        return static_cast<double>(s.end() - it) / s.size();
    };
    std::vector<RocPoint> points(grid);
    for (int i = 0; i < grid; ++i) {
        // sweep from high threshold (pfa ~ 0) to low (pfa ~ 1)
        const double gamma = hi + (lo - hi) * i / (grid - 1);
        points[i] = {exceedance(s0, gamma), exceedance(s1, gamma)};
    }
    std::sort(points.begin(), points.end(), [](const RocPoint& a, const RocPoint& b) {
        return a.pfa < b.pfa || (a.pfa == b.pfa && a.pd < b.pd);
    });
    return points;
}

double quantile_threshold(const std::vector<double>& h0, double pfa) {
    if (h0.empty())
        throw invalid_input("quantile_threshold: no null samples");
    if (!(pfa > 0.0 && pfa < 1.0))
        throw invalid_input("quantile_threshold: pfa must lie in (0, 1)");
    std::vector<double> sorted = h0;
    std::sort(sorted.begin(), sorted.end());
    const auto nsz = static_cast<long>(sorted.size());
    long idx = static_cast<long>(std::ceil((1.0 - pfa) * nsz)) - 1;
    idx = std::clamp<long>(idx, 0, nsz - 1);
    return sorted[idx];
}

double pd_at_pfa(const std::vector<double>& h0, const std::vector<double>& h1,
                 double pfa) {
    const double gamma = quantile_threshold(h0, pfa);
    long count = 0;
    for (double v : h1)
        count += v > gamma ? 1 : 0;
    return static_cast<double>(count) / h1.size();
}

PdSnrResult pd_vs_snr(const ExperimentConfig& config, double pfa_target) {
    validate(config);
    if (!(pfa_target > 0.0 && pfa_target < 1.0))
        throw invalid_input("pd_vs_snr: pfa target must lie in (0, 1)");
    PdSnrResult result;
    result.snr_db = config.snr_db;
    for (std::size_t i = 0; i < config.snr_db.size(); ++i) {
        const TrialTable table = run_campaign(config, config.snr_db[i]);
        if (i == 0)
            for (const auto& s : table.series)
                result.curves.push_back({s.label, {}});
        for (std::size_t si = 0; si < table.series.size(); ++si)
            result.curves[si].pd.push_back(
                pd_at_pfa(table.series[si].h0, table.series[si].h1, pfa_target));
    }
    return result;
}

} // namespace onebit::mc

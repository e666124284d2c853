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

#include <functional>
#include <iosfwd>
#include <string>

namespace onebit::cli {

/// Subcommand bodies. Each writes a CSV to `out_path` plus a JSON sidecar at
/// `out_path + ".json"` echoing every parameter that affects the output.
/// Errors are reported by throwing (invalid_input, numeric_error, io_error);
/// `guarded` maps them to the documented process exit codes.

/// Empirical ROC curves (pfa, pd) per configured detector at one SNR point.
void cmd_roc(const std::string& config_path, const std::string& out_path);

/// Noise-only fit quality: per-threshold empirical, Beta, and chi-squared
/// false-alarm probabilities plus both Cramer-von Mises errors.
void cmd_null_fit(const std::string& config_path, const std::string& out_path);

/// Signal-present fit quality across the configured SNR grid: empirical,
/// Beta (moment-matched), and non-central chi-squared detection
/// probabilities per threshold. Infeasible Beta fits are reported per point
/// and the run continues.
void cmd_nonnull_fit(const std::string& config_path, const std::string& out_path);

/// Detection probability versus SNR at a fixed false-alarm target, including
/// the oversampled Rao series when `rao_compensated` is set.
void cmd_pd_vs_snr(const std::string& config_path, const std::string& out_path);

/// Print raw-scale detection thresholds for a target false-alarm probability
/// under the Beta and chi-squared null fits.
void cmd_threshold(int m, int n, double pfa, std::ostream& out);

/// Exit codes: 0 success, 1 config error, 2 numeric failure, 3 I/O failure.
int guarded(const std::function<void()>& body);

} // namespace onebit::cli

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

#include <string>
#include <vector>

#include "onebit/montecarlo.hpp"

namespace onebit::io {

/// Campaign description parsed from a flat `key = value` config file.
/// `#` starts a comment; keys are case-sensitive. Required keys:
/// schema_version (currently 1), m, p, n, snr_db, trials, detectors,
/// master_seed. Optional: pfa_target, threshold_grid, workers,
/// rao_compensated.
struct CliConfig {
    int schema_version = 1;
    mc::ExperimentConfig experiment;
};

CliConfig load_config(const std::string& path);
CliConfig parse_config(const std::string& text);

/// Shortest round-trip decimal representation (std::to_chars), locale-free.
std::string format_double(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Minimal CSV support: comma separators, header row, LF line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);

} // namespace onebit::io

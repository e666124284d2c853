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

#include "onebit/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "onebit/errors.hpp"

namespace onebit::io {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_number(const std::string& value, const std::string& key) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw invalid_input("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

long parse_integer(const std::string& value, const std::string& key) {
    const double v = parse_number(value, key);
    const long i = static_cast<long>(v);
    if (static_cast<double>(i) != v)
        throw invalid_input("config: key '" + key + "' must be an integer");
    return i;
}

std::uint64_t parse_seed(const std::string& value, const std::string& key) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw invalid_input("config: key '" + key + "' must be an unsigned 64-bit integer");
    return v;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1")
        return true;
    if (value == "false" || value == "0")
        return false;
    throw invalid_input("config: key '" + key + "' must be true/false");
}

} // namespace

CliConfig parse_config(const std::string& text) {
    CliConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_seed = false;
    bool have_version = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw invalid_input("config line " + std::to_string(line_no) +
                                ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw invalid_input("config line " + std::to_string(line_no) +
                                ": empty key or value");
        if (!seen.insert(key).second)
            throw invalid_input("config: duplicate key '" + key + "'");

        auto& exp = cfg.experiment;
        if (key == "schema_version") {
            cfg.schema_version = static_cast<int>(parse_integer(value, key));
            if (cfg.schema_version != 1)
                throw invalid_input("config: unsupported schema_version " + value);
            have_version = true;
        } else if (key == "m") {
            exp.m = static_cast<int>(parse_integer(value, key));
        } else if (key == "p") {
            exp.p = static_cast<int>(parse_integer(value, key));
        } else if (key == "n") {
            exp.n = static_cast<int>(parse_integer(value, key));
        } else if (key == "snr_db") {
            exp.snr_db.clear();
            for (const auto& item : split(value, ','))
                exp.snr_db.push_back(parse_number(item, key));
        } else if (key == "trials") {
            exp.trials = parse_integer(value, key);
        } else if (key == "detectors") {
            exp.detectors.clear();
            for (const auto& item : split(value, ',')) {
                const auto kind = detect::detector_from_string(item);
                if (!kind)
                    throw invalid_input("config: unknown detector '" + item + "'");
                exp.detectors.push_back(*kind);
            }
        } else if (key == "master_seed") {
            exp.master_seed = parse_seed(value, key);
            have_seed = true;
        } else if (key == "pfa_target") {
            exp.pfa_target = parse_number(value, key);
        } else if (key == "threshold_grid") {
            exp.threshold_grid = static_cast<int>(parse_integer(value, key));
        } else if (key == "workers") {
            exp.workers = static_cast<int>(parse_integer(value, key));
        } else if (key == "rao_compensated") {
            exp.rao_compensated = parse_bool(value, key);
        } else {
            throw invalid_input("config: unknown key '" + key + "'");
        }
    }
    if (!have_version)
        throw invalid_input("config: schema_version is required");
    if (!have_seed)
        throw invalid_input("config: master_seed is required");
    mc::validate(cfg.experiment);
    return cfg;
}

CliConfig load_config(const std::string& path) {
    return parse_config(read_text_file(path));
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc())
        throw numeric_error("failed to format double");
    return std::string(buf, ptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw io_error("read failure on '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw io_error("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out)
        throw io_error("write failure on '" + path + "'");
}

std::string to_csv(const CsvTable& table) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.header.size())
            throw invalid_input("csv row width does not match header");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i];
        out << '\n';
    }
    return out.str();
}

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto cells = split(line, ',');
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

} // namespace onebit::io

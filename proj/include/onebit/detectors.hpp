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

#include <optional>
#include <string_view>

#include <Eigen/Dense>

#include "onebit/model.hpp"

namespace onebit::detect {

enum class DetectorKind {
    Rao,       // (n/2) sum_{i<j} |r_ij|^2 on the one-bit SCM
    Emr2,      // second-order eigenvalue-moment-ratio on the one-bit SCM
    OneBitEmr, // EMR of the expanded real SCM of stacked [Re; Im] signs
    Lmpit,     // (n/2) tr((R diag(R)^-1 - I)^2) on the raw-sample SCM
    InfEmr,    // second-order EMR on the raw-sample SCM
};

const char* to_string(DetectorKind kind);
std::optional<DetectorKind> detector_from_string(std::string_view name);

/// Sample covariance matrix (1/n) sum_t y(t) y(t)^H.
/// For quantized input every diagonal entry equals exactly 2.
struct SampleCovariance {
    Eigen::MatrixXcd matrix;
    int n = 0;
    bool from_quantized = false;
};

struct DetectorStatistic {
    DetectorKind kind;
    double value = 0.0;
    int m = 0;
    int n = 0;
};

SampleCovariance scm(const model::SampleBatch& batch);

/// One-bit Rao score statistic; requires an SCM built from quantized data.
/// Bounded on [0, n m (m-1)].
DetectorStatistic rao_statistic(const SampleCovariance& cov);

/// ((1/m)||R||^2) / ((1/m) tr R)^2. On a one-bit SCM this equals
/// rao/(m n) + 1 identically and is tagged Emr2; on a raw SCM it is the
/// infinite-resolution EMR baseline and is tagged InfEmr.
DetectorStatistic emr2_statistic(const SampleCovariance& cov);

/// Baseline detector on the expanded real 2m x 2m SCM of the stacked
/// [Re; Im] signs: 1 + (1/m) sum_{i<j<=2m} r_ij^2.
DetectorStatistic onebit_emr_statistic(const model::SampleBatch& batch);

/// Locally most powerful invariant test for independence, evaluated on the
/// sample covariance: (n/2) tr((R diag(R)^-1 - I)^2). Invariant under
/// positive diagonal scaling of R.
DetectorStatistic lmpit_statistic(const SampleCovariance& cov);

/// Map the Rao statistic onto [0, 1]: value / (n m (m-1)).
double normalize_rao(double rao_value, int m, int n);

} // namespace onebit::detect

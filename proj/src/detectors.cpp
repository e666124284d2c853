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

#include "onebit/detectors.hpp"

#include "onebit/errors.hpp"

namespace onebit::detect {

const char* to_string(DetectorKind kind) {
    switch (kind) {
    case DetectorKind::Rao: return "rao";
    case DetectorKind::Emr2: return "emr2";
    case DetectorKind::OneBitEmr: return "onebit_emr";
    case DetectorKind::Lmpit: return "lmpit";
    case DetectorKind::InfEmr: return "inf_emr";
    }
    return "unknown";
}

std::optional<DetectorKind> detector_from_string(std::string_view name) {
    if (name == "rao") return DetectorKind::Rao;
    if (name == "emr2") return DetectorKind::Emr2;
    if (name == "onebit_emr") return DetectorKind::OneBitEmr;
    if (name == "lmpit") return DetectorKind::Lmpit;
    if (name == "inf_emr") return DetectorKind::InfEmr;
    return std::nullopt;
}

SampleCovariance scm(const model::SampleBatch& batch) {
    const int n = static_cast<int>(batch.data.cols());
    if (n < 1 || batch.data.rows() < 1)
        throw invalid_input("sample batch is empty");
    SampleCovariance out;
    // Division (not multiplication by 1/n) keeps the quantized diagonal at
    // exactly 2: (2n)/n is exact in IEEE arithmetic.
    out.matrix = (batch.data * batch.data.adjoint()) / static_cast<double>(n);
    out.matrix = 0.5 * (out.matrix + out.matrix.adjoint()).eval();
    out.n = n;
    out.from_quantized = batch.quantized;
    return out;
}

DetectorStatistic rao_statistic(const SampleCovariance& cov) {
    if (!cov.from_quantized)
        throw invalid_input("Rao statistic is defined on the one-bit SCM");
    const int m = static_cast<int>(cov.matrix.rows());
    double sum = 0.0;
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            sum += std::norm(cov.matrix(i, j));
    return {DetectorKind::Rao, 0.5 * cov.n * sum, m, cov.n};
}

DetectorStatistic emr2_statistic(const SampleCovariance& cov) {
    const int m = static_cast<int>(cov.matrix.rows());
    const double tr = cov.matrix.trace().real();
    if (tr == 0.0)
        throw numeric_error("EMR statistic undefined: SCM has zero trace");
    const double frob2 = cov.matrix.squaredNorm();
    const double value = (frob2 / m) / ((tr / m) * (tr / m));
    return {cov.from_quantized ? DetectorKind::Emr2 : DetectorKind::InfEmr, value, m, cov.n};
}

DetectorStatistic onebit_emr_statistic(const model::SampleBatch& batch) {
    if (!batch.quantized)
        throw invalid_input("one-bit EMR requires a quantized batch");
    const int m = static_cast<int>(batch.data.rows());
    const int n = static_cast<int>(batch.data.cols());
    Eigen::MatrixXd stacked(2 * m, n);
    stacked.topRows(m) = batch.data.real();
    stacked.bottomRows(m) = batch.data.imag();
    const Eigen::MatrixXd r = (stacked * stacked.transpose()) / static_cast<double>(n);
    double sum = 0.0;
    for (int j = 1; j < 2 * m; ++j)
        for (int i = 0; i < j; ++i)
            sum += r(i, j) * r(i, j);
    return {DetectorKind::OneBitEmr, 1.0 + sum / m, m, n};
}

DetectorStatistic lmpit_statistic(const SampleCovariance& cov) {
    const int m = static_cast<int>(cov.matrix.rows());
    const Eigen::VectorXd d = cov.matrix.diagonal().real();
    if ((d.array() <= 0.0).any())
        throw numeric_error("LMPIT undefined: SCM has a non-positive diagonal entry");
    // tr((R D^-1 - I)^2) = sum_{i != j} |r_ij|^2 / (d_i d_j) for Hermitian R.
    double sum = 0.0;
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            sum += std::norm(cov.matrix(i, j)) / (d[i] * d[j]);
    return {DetectorKind::Lmpit, cov.n * sum, m, cov.n};
}

double normalize_rao(double rao_value, int m, int n) {
    return rao_value / (static_cast<double>(n) * m * (m - 1));
}

} // namespace onebit::detect

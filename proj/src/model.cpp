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

#include "onebit/model.hpp"

#include <cmath>
#include <string>

#include "onebit/errors.hpp"

namespace onebit::model {

namespace {

void require_hermitian(const Eigen::MatrixXcd& a, const char* what) {
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw invalid_input(std::string(what) + " must be Hermitian");
}

void require_psd(const Eigen::MatrixXcd& a, const char* what) {
    require_hermitian(a, what);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-10 * scale)
        throw invalid_input(std::string(what) + " must be positive semi-definite");
}

} // namespace

void validate(const ModelDims& dims) {
    if (dims.m < 2)
        throw invalid_input("antenna count m must be >= 2");
    if (dims.p < 1)
        throw invalid_input("transmitter count p must be >= 1");
    if (dims.n < 1)
        throw invalid_input("snapshot count n must be >= 1");
}

PopulationModel build_population(const ModelDims& dims,
                                 const Eigen::MatrixXcd& channel,
                                 const Eigen::MatrixXcd& signal_cov,
                                 const Eigen::VectorXd& noise_var,
                                 Hypothesis hypothesis) {
    validate(dims);
    if (channel.rows() != dims.m || channel.cols() != dims.p)
        throw invalid_input("channel must be m x p");
    if (signal_cov.rows() != dims.p || signal_cov.cols() != dims.p)
        throw invalid_input("signal covariance must be p x p");
    if (noise_var.size() != dims.m)
        throw invalid_input("noise variance vector must have length m");
    if ((noise_var.array() <= 0.0).any())
        throw invalid_input("noise variances must be strictly positive");
    require_psd(signal_cov, "signal covariance");

    PopulationModel out;
    out.dims = dims;
    out.channel = channel;
    out.signal_cov = signal_cov;
    out.noise_var = noise_var;

    out.cov = noise_var.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
    if (hypothesis == Hypothesis::SignalPresent)
        out.cov += channel * signal_cov * channel.adjoint();
    // Symmetrize away factorization round-off; the diagonal stays real.
    out.cov = 0.5 * (out.cov + out.cov.adjoint()).eval();

    const Eigen::VectorXd inv_sqrt_diag = out.cov.diagonal().real().cwiseSqrt().cwiseInverse();
    out.coherence = inv_sqrt_diag.asDiagonal() * out.cov * inv_sqrt_diag.asDiagonal();
    out.coherence.diagonal().setOnes();
    out.theta = theta_from_coherence(out.coherence);
    return out;
}

Eigen::VectorXd theta_from_coherence(const Eigen::MatrixXcd& coherence) {
    const int m = static_cast<int>(coherence.rows());
    if (coherence.cols() != m || m < 1)
        throw invalid_input("coherence matrix must be square");
    for (int i = 0; i < m; ++i) {
        if (std::abs(coherence(i, i) - std::complex<double>(1.0, 0.0)) > 1e-10)
            throw invalid_input("coherence matrix must have unit diagonal");
    }
    Eigen::VectorXd theta(static_cast<Eigen::Index>(m) * m - m);
    const int pairs = m * (m - 1) / 2;
    int k = 0;
    for (int j = 1; j < m; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            theta[k] = coherence(i, j).real();
            theta[pairs + k] = coherence(i, j).imag();
        }
    }
    return theta;
}

Eigen::MatrixXd expanded_coherence(const Eigen::MatrixXcd& coherence) {
    const int m = static_cast<int>(coherence.rows());
    Eigen::MatrixXd p(2 * m, 2 * m);
    const Eigen::MatrixXd re = coherence.real();
    const Eigen::MatrixXd im = coherence.imag();
    p.topLeftCorner(m, m) = re;
    p.topRightCorner(m, m) = -im;
    p.bottomLeftCorner(m, m) = im;
    p.bottomRightCorner(m, m) = re;
    p.diagonal().setOnes();
    return p;
}

Eigen::MatrixXcd cholesky_factor(const PopulationModel& model) {
    Eigen::LLT<Eigen::MatrixXcd> llt(model.cov);
    if (llt.info() != Eigen::Success)
        throw numeric_error("population covariance is not positive definite");
    return llt.matrixL();
}

SampleBatch sample_gaussian(const Eigen::MatrixXcd& chol, int n, RngStream& rng) {
    if (n < 1)
        throw invalid_input("snapshot count must be >= 1");
    const int m = static_cast<int>(chol.rows());
    Eigen::MatrixXcd z(m, n);
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < m; ++i)
            z(i, t) = rng.next_cnormal();
    SampleBatch batch;
    batch.data = chol.triangularView<Eigen::Lower>() * z;
    batch.quantized = false;
    return batch;
}

SampleBatch sample_gaussian(const PopulationModel& model, int n, RngStream& rng) {
    return sample_gaussian(cholesky_factor(model), n, rng);
}

SampleBatch quantize(const SampleBatch& batch) {
    SampleBatch out;
    out.data = batch.data.unaryExpr([](std::complex<double> v) {
        return std::complex<double>(v.real() >= 0.0 ? 1.0 : -1.0,
                                    v.imag() >= 0.0 ? 1.0 : -1.0);
    });
    out.quantized = true;
    return out;
}

Eigen::MatrixXcd generate_channel(const ModelDims& dims, RngStream& rng) {
    Eigen::MatrixXcd h(dims.m, dims.p);
    for (int j = 0; j < dims.p; ++j)
        for (int i = 0; i < dims.m; ++i)
            h(i, j) = rng.next_cnormal();
    for (int j = 0; j < dims.p; ++j)
        h.col(j) /= h.col(j).norm();
    return h;
}

Eigen::MatrixXcd scale_for_snr(const Eigen::MatrixXcd& signal_cov,
                               const Eigen::VectorXd& noise_var,
                               double snr_db) {
    const double tr_s = signal_cov.trace().real();
    const double tr_w = noise_var.sum();
    if (tr_s <= 0.0)
        throw invalid_input("signal covariance must have positive trace");
    if (tr_w <= 0.0)
        throw invalid_input("noise covariance must have positive trace");
    const int p = static_cast<int>(signal_cov.rows());
    const int m = static_cast<int>(noise_var.size());
    const double target_power = std::pow(10.0, snr_db / 10.0) * (tr_w / m);
    const double c = target_power / (tr_s / p);
    return c * signal_cov;
}

double snr_db_of(const Eigen::MatrixXcd& signal_cov, const Eigen::VectorXd& noise_var) {
    const double sig = signal_cov.trace().real() / static_cast<double>(signal_cov.rows());
    const double noi = noise_var.sum() / static_cast<double>(noise_var.size());
    return 10.0 * std::log10(sig / noi);
}

} // namespace onebit::model

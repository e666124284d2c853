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

#include <Eigen/Dense>

#include "onebit/rng.hpp"

namespace onebit::model {

/// Problem dimensions: m receive antennas, p transmitters, n snapshots.
struct ModelDims {
    int m = 0;
    int p = 0;
    int n = 0;
};

/// Throws invalid_input unless m >= 2, p >= 1, n >= 1.
void validate(const ModelDims& dims);

enum class Hypothesis {
    NoiseOnly,     // H0: x(t) = w(t)
    SignalPresent, // H1: x(t) = H s(t) + w(t)
};

/// Population-level description of the received signal x(t).
///
/// `cov` is the m x m population covariance; `coherence` is cov normalized
/// to unit diagonal; `theta` collects the free coherence parameters of the
/// expanded real model: first the real parts of the strict upper triangle
/// of `coherence` in column-major pair order (1,2),(1,3),(2,3),...,(m-1,m),
/// then the imaginary parts in the same order. theta == 0 exactly when the
/// coherence matrix is the identity.
struct PopulationModel {
    ModelDims dims;
    Eigen::MatrixXcd channel;    // m x p
    Eigen::MatrixXcd signal_cov; // p x p, Hermitian PSD
    Eigen::VectorXd noise_var;   // m, strictly positive
    Eigen::MatrixXcd cov;        // m x m, Hermitian PD
    Eigen::MatrixXcd coherence;  // m x m, unit diagonal
    Eigen::VectorXd theta;       // m^2 - m
};

/// An m x n block of snapshots. When `quantized`, each entry has real and
/// imaginary parts in {-1, +1}.
struct SampleBatch {
    Eigen::MatrixXcd data;
    bool quantized = false;
};

/// Assemble the population for one hypothesis:
///   H0: cov = diag(noise_var)
///   H1: cov = channel * signal_cov * channel^H + diag(noise_var)
/// Throws invalid_input for shape mismatches, non-PSD signal covariance, or
/// non-positive noise variances.
PopulationModel build_population(const ModelDims& dims,
                                 const Eigen::MatrixXcd& channel,
                                 const Eigen::MatrixXcd& signal_cov,
                                 const Eigen::VectorXd& noise_var,
                                 Hypothesis hypothesis);

/// Extract theta from a unit-diagonal coherence matrix (see PopulationModel).
Eigen::VectorXd theta_from_coherence(const Eigen::MatrixXcd& coherence);

/// The 2m x 2m unit-diagonal coherence matrix of the stacked real vector
/// [Re(x); Im(x)]:  [ Re(P)  -Im(P) ; Im(P)  Re(P) ].
Eigen::MatrixXd expanded_coherence(const Eigen::MatrixXcd& coherence);

/// Lower Cholesky factor of the population covariance. Exposed so that
/// campaign loops can factor once and draw many batches.
Eigen::MatrixXcd cholesky_factor(const PopulationModel& model);

/// Draw n zero-mean circular complex Gaussian snapshots with the model's
/// population covariance.
SampleBatch sample_gaussian(const PopulationModel& model, int n, RngStream& rng);

/// Same, with a precomputed Cholesky factor.
SampleBatch sample_gaussian(const Eigen::MatrixXcd& chol, int n, RngStream& rng);

/// One-bit quantizer: sign(Re) + i sign(Im), elementwise; sign(0) := +1.
SampleBatch quantize(const SampleBatch& batch);

/// Random m x p channel with i.i.d. CN(0,1) entries, columns scaled to unit
/// Euclidean norm.
Eigen::MatrixXcd generate_channel(const ModelDims& dims, RngStream& rng);

/// Scale the signal covariance so that
///   10 log10( (tr(signal_cov')/p) / (tr(diag(noise_var))/m) ) == snr_db.
Eigen::MatrixXcd scale_for_snr(const Eigen::MatrixXcd& signal_cov,
                               const Eigen::VectorXd& noise_var,
                               double snr_db);

/// SNR in dB realized by a (signal_cov, noise_var) pair.
double snr_db_of(const Eigen::MatrixXcd& signal_cov, const Eigen::VectorXd& noise_var);

} // namespace onebit::model

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
#include <unordered_map>

#include <Eigen/Dense>

namespace onebit::dist {

/// Mean/variance pair of the normalized Rao statistic T' in (0, 1).
struct MomentPair {
    double mean = 0.0;
    double variance = 0.0;
};

/// Beta(alpha, beta) on [0, 1]; approximates the law of T'.
struct BetaFit {
    double alpha = 0.0;
    double beta = 0.0;
};

/// (Non-central) chi-squared fit on the raw statistic scale;
/// delta2 == 0 encodes the central case. dof is m^2 - m.
struct Chi2Fit {
    int dof = 0;
    double delta2 = 0.0;
};

/// Exact noise-only moments of T': mean 1/n,
/// variance 2(n-1) / (m(m-1)n^3). Requires m >= 2, n >= 2.
MomentPair null_moments(int m, int n);

/// Closed-form Beta parameters matching the noise-only moments:
/// alpha = (n m(m-1) - 2) / (2n), beta = (n-1)(n m(m-1) - 2) / (2n).
BetaFit null_beta_params(int m, int n);

/// Exact signal-present moments of T' from the 2m x 2m expanded coherence
/// matrix. Sums arcsine-law pair and quad moments over all ordered pairs of
/// antenna pairs; quad moments are evaluated through quadrivariate orthant
/// probabilities and memoized per call. Reduces exactly to null_moments when
/// the coherence is the identity.
MomentPair h1_moments(const Eigen::MatrixXd& expanded_coherence, int m, int n);

/// Beta parameters matching an arbitrary feasible moment pair. Throws
/// fit_infeasible when variance >= mean(1 - mean).
BetaFit beta_from_moments(const MomentPair& moments);

double beta_cdf(double x, const BetaFit& fit);
double beta_inv_cdf(double p, const BetaFit& fit);

/// Central chi-squared CDF with k degrees of freedom.
double chi2_cdf(double x, int k);
double chi2_inv_cdf(double p, int k);

/// Non-central chi-squared CDF (Poisson-weighted central series).
double nc_chi2_cdf(double x, int k, double delta2);

enum class AdcResolution {
    OneBit,   // delta^2 = (8 n / pi^2) ||theta||^2
    Infinite, // delta^2 = 2 n ||theta||^2
};

/// Non-centrality parameter of the low-SNR chi-squared approximation.
/// The Infinite/OneBit ratio is pi^2 / 4 for every theta.
double noncentrality(const Eigen::VectorXd& theta, int n, AdcResolution resolution);

/// Threshold on the raw statistic scale achieving the target false-alarm
/// probability under the given null fit. Beta fits live on the normalized
/// scale and are mapped back by n m(m-1); chi-squared fits are already raw.
double pfa_threshold(double target_pfa, const BetaFit& fit, int m, int n);
double pfa_threshold(double target_pfa, const Chi2Fit& fit);

/// Arcsine-law sign moments of the quantizer output for one expanded
/// coherence matrix, with a per-instance memo for the quad moments.
/// Instances are cheap to build and not meant to be shared across threads.
class SignMomentTable {
  public:
    explicit SignMomentTable(Eigen::MatrixXd expanded_coherence);

    int dim() const { return static_cast<int>(coherence_.rows()); }

    /// E[y_a y_b] = (2/pi) arcsin(rho_ab).
    double pair(int a, int b) const { return pair_(a, b); }

    /// E[y_a y_b y_c y_d]; indices must be distinct.
    double quad(int a, int b, int c, int d) const;

  private:
    Eigen::MatrixXd coherence_;
    Eigen::MatrixXd pair_;
    mutable std::unordered_map<std::uint32_t, double> quad_cache_;
};

} // namespace onebit::dist

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

namespace onebit::orthant {

/// P{X1 > 0, X2 > 0} for a zero-mean bivariate Gaussian with correlation
/// rho: 1/4 + arcsin(rho) / (2 pi). Exact.
double orthant2(double rho);

/// Trivariate central orthant probability, exact closed form:
/// 1/8 + (arcsin r12 + arcsin r13 + arcsin r23) / (4 pi).
double orthant3(double r12, double r13, double r23);

/// Validated symmetric unit-diagonal 4x4 correlation matrix.
/// Entries within 1e-12 of +-1 are clamped; PSD is required within 1e-10.
class Correlation4 {
  public:
    explicit Correlation4(const Eigen::Matrix4d& corr);

    /// Build from the strict upper triangle (r12, r13, r14, r23, r24, r34).
    static Correlation4 from_upper(double r12, double r13, double r14,
                                   double r23, double r24, double r34);

    const Eigen::Matrix4d& matrix() const { return corr_; }

  private:
    Eigen::Matrix4d corr_;
};

/// Quadrivariate central orthant probability P{X1..X4 > 0}, absolute
/// accuracy <= 1e-8.
///
/// Evaluated as 1/16 + (1/(8 pi)) sum arcsin(r_ij) plus a residual obtained
/// by integrating Plackett's derivative identity along the linear path from
/// the identity matrix: each of the six pair terms becomes a smooth
/// one-dimensional integral after the substitution s = arcsin(t r_ij), which
/// also removes the endpoint singularity as |r_ij| -> 1. Correlations at
/// exactly +-1 are reduced to lower-order orthants first. If the adaptive
/// quadrature does not converge, a randomized quasi-Monte Carlo estimate
/// (separation-of-variables form) with an internal error estimate is used;
/// failure of both raises numeric_error with diagnostics.
double orthant4(const Correlation4& corr);

/// Randomized quasi-Monte Carlo estimate of the quadrivariate orthant
/// (separation-of-variables form over a shifted Kronecker lattice).
/// `error_estimate` receives three standard errors of the shift spread.
/// Used by orthant4 as the fallback when the path quadrature does not
/// converge; exposed for direct validation. Deterministic for a given input.
double orthant4_randomized(const Correlation4& corr, double& error_estimate);

/// Arcsine-law pair moment E[sign(Xa) sign(Xb)] = (2/pi) arcsin(rho).
double h_pair(double rho);

/// Fourth sign moment E[sign(Xa) sign(Xb) sign(Xc) sign(Xd)]
/// = 16 P_abcd - 1 - (sum of the six pairwise moments).
double h_quad(const Correlation4& corr);

} // namespace onebit::orthant

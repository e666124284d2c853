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

#include "onebit/orthant.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/erf.hpp>

#include "onebit/errors.hpp"
#include "onebit/rng.hpp"

namespace onebit::orthant {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-12; // clamp band around +-1
constexpr double kPsdTol = 1e-10;

double clamp_correlation(double rho, const char* what) {
    if (std::abs(rho) > 1.0 + kBoundaryTol)
        throw invalid_input(std::string(what) + ": correlation outside [-1, 1]");
    return std::clamp(rho, -1.0, 1.0);
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod 15(7) quadrature
// ---------------------------------------------------------------------------

// Nodes/weights from QUADPACK dqk15.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkResult {
    double integral = 0.0;
    double error = 0.0;
};

template <typename F>
GkResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double kron = 0.0;
    for (int i = 0; i < 7; ++i)
        kron += kWgk[i] * (fv[i] + fv[14 - i]);
    kron += kWgk[7] * fv[7];
    double gauss = kWg[3] * fv[7];
    for (int i = 0; i < 3; ++i)
        gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    GkResult r;
    r.integral = kron * h;
    r.error = std::abs((kron - gauss) * h);
    return r;
}

template <typename F>
bool integrate_adaptive(const F& f, double a, double b, double tol, int depth,
                        double& integral, double& err_est) {
    const GkResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 26) {
        integral += r.integral;
        err_est += r.error;
        return r.error <= tol;
    }
    const double c = 0.5 * (a + b);
    const bool ok1 = integrate_adaptive(f, a, c, 0.5 * tol, depth + 1, integral, err_est);
    const bool ok2 = integrate_adaptive(f, c, b, 0.5 * tol, depth + 1, integral, err_est);
    return ok1 && ok2;
}

// ---------------------------------------------------------------------------
// Plackett path residual
// ---------------------------------------------------------------------------

// Conditional correlation of (X_k, X_l) given X_i = X_j = 0 under the path
// matrix R(t) whose off-diagonal entries are t * corr.
double conditional_correlation(const Eigen::Matrix4d& corr, double t,
                               int i, int j, int k, int l) {
    const double rij = t * corr(i, j);
    const double den = std::max(1.0 - rij * rij, 1e-14);
    const auto q = [&](int x, int y) {
        const double rxi = t * corr(x, i);
        const double rxj = t * corr(x, j);
        const double ryi = t * corr(y, i);
        const double ryj = t * corr(y, j);
        return (rxi * ryi + rxj * ryj - rij * (rxi * ryj + rxj * ryi)) / den;
    };
    const double ckk = 1.0 - q(k, k);
    const double cll = 1.0 - q(l, l);
    const double ckl = t * corr(k, l) - q(k, l);
    const double scale = std::sqrt(std::max(ckk, 1e-14) * std::max(cll, 1e-14));
    return std::clamp(ckl / scale, -1.0, 1.0);
}

// Residual for pair (i,j) with complement (k,l):
//   (1/(4 pi^2)) * Int_0^1 corr_ij / sqrt(1 - t^2 corr_ij^2)
//                        * arcsin(rho*_{kl|ij}(t)) dt,
// evaluated after the substitution s = arcsin(t corr_ij).
bool pair_residual(const Eigen::Matrix4d& corr, int i, int j, int k, int l,
                   double& integral, double& err_est) {
    const double rho = corr(i, j);
    if (rho == 0.0)
        return true;
    const double s_max = std::asin(rho);
    const auto f = [&](double s) {
        const double t = std::min(std::sin(s) / rho, 1.0);
        return std::asin(conditional_correlation(corr, t, i, j, k, l));
    };
    double part = 0.0;
    double err = 0.0;
    bool ok;
    if (s_max >= 0.0)
        ok = integrate_adaptive(f, 0.0, s_max, 2e-11, 0, part, err);
    else {
        ok = integrate_adaptive(f, s_max, 0.0, 2e-11, 0, part, err);
        part = -part;
    }
    integral += part / (4.0 * kPi * kPi);
    err_est += err / (4.0 * kPi * kPi);
    return ok;
}

constexpr int kPairIdx[6][4] = {
    // (i, j) with complement (k, l)
    {0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
    {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};

double orthant4_plackett(const Eigen::Matrix4d& corr, double& err_est) {
    double value = 1.0 / 16.0;
    for (const auto& p : kPairIdx)
        value += std::asin(corr(p[0], p[1])) / (8.0 * kPi);
    bool converged = true;
    for (const auto& p : kPairIdx)
        converged &= pair_residual(corr, p[0], p[1], p[2], p[3], value, err_est);
    if (!converged)
        err_est = std::max(err_est, 1e-6);
    return value;
}

// ---------------------------------------------------------------------------
// Randomized quasi-Monte Carlo fallback (separation-of-variables form)
// ---------------------------------------------------------------------------

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double normal_quantile(double p) {
    return -1.4142135623730950488 * boost::math::erfc_inv(2.0 * p);
}

double orthant4_qmc_impl(const Eigen::Matrix4d& corr, double& err_est) {
    Eigen::Matrix4d a = corr;
    Eigen::LLT<Eigen::Matrix4d> llt(a);
    double jitter = 1e-12;
    while (llt.info() != Eigen::Success && jitter <= 1e-6) {
        a = corr + jitter * Eigen::Matrix4d::Identity();
        llt.compute(a);
        jitter *= 100.0;
    }
    if (llt.info() != Eigen::Success)
        throw numeric_error("orthant4: correlation matrix could not be factorized");
    const Eigen::Matrix4d lower = llt.matrixL();

    // Kronecker sequence on [0,1)^3 with independent random shifts; the
    // spread of the per-shift means gives the error estimate. The shift
    // stream is fixed, so the estimate is deterministic for a given input.
    const double alpha[3] = {0.41421356237309515, 0.7320508075688772, 0.23606797749978969};
    constexpr int kShifts = 12;
    constexpr int kPoints = 16384;
    RngStream shift_rng(0x0f8a11c4u);
    double means[kShifts];
    for (int s = 0; s < kShifts; ++s) {
        const double d0 = shift_rng.next_double();
        const double d1 = shift_rng.next_double();
        const double d2 = shift_rng.next_double();
        double acc = 0.0;
        for (int k = 0; k < kPoints; ++k) {
            const double u[3] = {std::fmod(d0 + k * alpha[0], 1.0),
                                 std::fmod(d1 + k * alpha[1], 1.0),
                                 std::fmod(d2 + k * alpha[2], 1.0)};
            double w = 0.5; // P{X1 > 0}
            double y[3];
            y[0] = normal_quantile(std::min(0.5 + 0.5 * u[0], 1.0 - 1e-16));
            for (int row = 1; row < 4; ++row) {
                double cond = 0.0;
                for (int col = 0; col < row; ++col)
                    cond += lower(row, col) * y[col];
                const double alo = -cond / lower(row, row);
                const double plo = normal_cdf(alo);
                const double excess = 1.0 - plo;
                w *= excess;
                if (w <= 1e-300)
                    break;
                if (row < 3) {
                    const double p = plo + u[row] * excess;
                    y[row] = normal_quantile(std::clamp(p, 1e-300, 1.0 - 1e-16));
                }
            }
            acc += w;
        }
        means[s] = acc / kPoints;
    }
    double mean = 0.0;
    for (double v : means)
        mean += v;
    mean /= kShifts;
    double var = 0.0;
    for (double v : means)
        var += (v - mean) * (v - mean);
    var /= (kShifts - 1);
    err_est = 3.0 * std::sqrt(var / kShifts);
    return mean;
}

} // namespace

double orthant4_randomized(const Correlation4& corr, double& error_estimate) {
    return orthant4_qmc_impl(corr.matrix(), error_estimate);
}

double orthant2(double rho) {
    rho = clamp_correlation(rho, "orthant2");
    return 0.25 + std::asin(rho) / (2.0 * kPi);
}

double orthant3(double r12, double r13, double r23) {
    r12 = clamp_correlation(r12, "orthant3");
    r13 = clamp_correlation(r13, "orthant3");
    r23 = clamp_correlation(r23, "orthant3");
    Eigen::Matrix3d c;
    c << 1, r12, r13, r12, 1, r23, r13, r23, 1;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw invalid_input("orthant3: correlation matrix is not PSD");
    return 0.125 + (std::asin(r12) + std::asin(r13) + std::asin(r23)) / (4.0 * kPi);
}

Correlation4::Correlation4(const Eigen::Matrix4d& corr) : corr_(corr) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(corr_(i, i) - 1.0) > kPsdTol)
            throw invalid_input("Correlation4: diagonal must be 1");
        corr_(i, i) = 1.0;
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (std::abs(corr_(i, j) - corr_(j, i)) > kPsdTol)
                throw invalid_input("Correlation4: matrix must be symmetric");
            const double r = clamp_correlation(corr_(i, j), "Correlation4");
            corr_(i, j) = r;
            corr_(j, i) = r;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(corr_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw invalid_input("Correlation4: matrix is not PSD");
}

Correlation4 Correlation4::from_upper(double r12, double r13, double r14,
                                      double r23, double r24, double r34) {
    Eigen::Matrix4d c;
    c << 1, r12, r13, r14,
         r12, 1, r23, r24,
         r13, r23, 1, r34,
         r14, r24, r34, 1;
    return Correlation4(c);
}

double orthant4(const Correlation4& corr) {
    const Eigen::Matrix4d& m = corr.matrix();

    // Correlations at +-1 make one variable a deterministic copy of another:
    // reduce to a trivariate orthant (or to zero for a sign conflict).
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            if (m(i, j) >= 1.0 - kBoundaryTol) {
                int rest[3], k = 0;
                for (int a = 0; a < 4; ++a)
                    if (a != j)
                        rest[k++] = a;
                return orthant3(m(rest[0], rest[1]), m(rest[0], rest[2]),
                                m(rest[1], rest[2]));
            }
            if (m(i, j) <= -(1.0 - kBoundaryTol))
                return 0.0;
        }
    }

    double err_est = 0.0;
    double value = orthant4_plackett(m, err_est);
    if (err_est <= 5e-9)
        return std::clamp(value, 0.0, 1.0);

    double qmc_err = 0.0;
    const double qmc = orthant4_qmc_impl(m, qmc_err);
    if (qmc_err <= 5e-7)
        return std::clamp(qmc, 0.0, 1.0);

    std::ostringstream msg;
    msg << "orthant4 failed to converge: path error " << err_est
        << ", qmc error " << qmc_err << ", matrix\n" << m;
    throw numeric_error(msg.str());
}

double h_pair(double rho) {
    rho = clamp_correlation(rho, "h_pair");
    return (2.0 / kPi) * std::asin(rho);
}

double h_quad(const Correlation4& corr) {
    const Eigen::Matrix4d& m = corr.matrix();
    double pair_sum = 0.0;
    for (const auto& p : kPairIdx)
        pair_sum += h_pair(m(p[0], p[1]));
    return 16.0 * orthant4(corr) - 1.0 - pair_sum;
}

} // namespace onebit::orthant

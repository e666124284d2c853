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

#include "onebit/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "onebit/errors.hpp"
#include "onebit/orthant.hpp"

namespace onebit::dist {

namespace {

constexpr double kPi = std::numbers::pi;

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw invalid_input(std::string(what) + ": probability outside [0, 1]");
}

} // namespace

MomentPair null_moments(int m, int n) {
    if (m < 2)
        throw invalid_input("null_moments: m must be >= 2");
    if (n < 2)
        throw invalid_input("null_moments: variance degenerates at n < 2");
    const double nd = n;
    return {1.0 / nd, 2.0 * (nd - 1.0) / (static_cast<double>(m) * (m - 1) * nd * nd * nd)};
}

BetaFit null_beta_params(int m, int n) {
    if (m < 2 || n < 2) // n = 1 collapses beta0 to zero
        throw invalid_input("null_beta_params: require m >= 2 and n >= 2");
    const double k = static_cast<double>(n) * m * (m - 1);
    if (k <= 2.0)
        throw invalid_input("null_beta_params: n m(m-1) must exceed 2");
    return {(k - 2.0) / (2.0 * n), (n - 1.0) * (k - 2.0) / (2.0 * n)};
}

BetaFit beta_from_moments(const MomentPair& moments) {
    const double mu = moments.mean;
    const double s2 = moments.variance;
    if (!(mu > 0.0 && mu < 1.0))
        throw fit_infeasible("beta fit: mean must lie in (0, 1)");
    if (!(s2 > 0.0) || s2 >= mu * (1.0 - mu))
        throw fit_infeasible("beta fit: variance outside (0, mean(1-mean))");
    const double common = mu - mu * mu - s2;
    return {mu * common / s2, (1.0 - mu) * common / s2};
}

double beta_cdf(double x, const BetaFit& fit) {
    require_probability(x, "beta_cdf");
    return boost::math::ibeta(fit.alpha, fit.beta, x);
}

double beta_inv_cdf(double p, const BetaFit& fit) {
    require_probability(p, "beta_inv_cdf");
    return boost::math::ibeta_inv(fit.alpha, fit.beta, p);
}

double chi2_cdf(double x, int k) {
    if (k < 1)
        throw invalid_input("chi2_cdf: degrees of freedom must be >= 1");
    if (x < 0.0)
        throw invalid_input("chi2_cdf: argument must be >= 0");
    return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

double chi2_inv_cdf(double p, int k) {
    if (k < 1)
        throw invalid_input("chi2_inv_cdf: degrees of freedom must be >= 1");
    require_probability(p, "chi2_inv_cdf");
    return 2.0 * boost::math::gamma_p_inv(0.5 * k, p);
}

double nc_chi2_cdf(double x, int k, double delta2) {
    if (k < 1)
        throw invalid_input("nc_chi2_cdf: degrees of freedom must be >= 1");
    if (delta2 < 0.0)
        throw invalid_input("nc_chi2_cdf: non-centrality must be >= 0");
    if (x < 0.0)
        throw invalid_input("nc_chi2_cdf: argument must be >= 0");
    if (delta2 == 0.0)
        return chi2_cdf(x, k);
    try {
        const boost::math::non_central_chi_squared nc(k, delta2);
        return boost::math::cdf(nc, x);
    } catch (const std::exception& e) {
        throw numeric_error(std::string("nc_chi2_cdf failed to converge: ") + e.what());
    }
}

double noncentrality(const Eigen::VectorXd& theta, int n, AdcResolution resolution) {
    const double norm2 = theta.squaredNorm();
    switch (resolution) {
    case AdcResolution::OneBit: return 8.0 * n * norm2 / (kPi * kPi);
    case AdcResolution::Infinite: return 2.0 * n * norm2;
    }
    return 0.0;
}

double pfa_threshold(double target_pfa, const BetaFit& fit, int m, int n) {
    if (!(target_pfa > 0.0 && target_pfa <= 1.0))
        throw invalid_input("pfa_threshold: target must lie in (0, 1]");
    const double x = beta_inv_cdf(1.0 - target_pfa, fit);
    return x * static_cast<double>(n) * m * (m - 1);
}

double pfa_threshold(double target_pfa, const Chi2Fit& fit) {
    if (!(target_pfa > 0.0 && target_pfa <= 1.0))
        throw invalid_input("pfa_threshold: target must lie in (0, 1]");
    if (fit.delta2 == 0.0)
        return chi2_inv_cdf(1.0 - target_pfa, fit.dof);
    const boost::math::non_central_chi_squared nc(fit.dof, fit.delta2);
    return boost::math::quantile(nc, 1.0 - target_pfa);
}

// ---------------------------------------------------------------------------
// Sign moments
// ---------------------------------------------------------------------------

SignMomentTable::SignMomentTable(Eigen::MatrixXd expanded_coherence)
    : coherence_(std::move(expanded_coherence)) {
    const int d = static_cast<int>(coherence_.rows());
    if (coherence_.cols() != d || d < 2)
        throw invalid_input("SignMomentTable: expanded coherence must be square");
    pair_.resize(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            pair_(a, b) = a == b ? 1.0 : orthant::h_pair(coherence_(a, b));
}

double SignMomentTable::quad(int a, int b, int c, int d) const {
    int idx[4] = {a, b, c, d};
    std::sort(idx, idx + 4);
    if (idx[0] == idx[1] || idx[1] == idx[2] || idx[2] == idx[3])
        throw invalid_input("SignMomentTable::quad: indices must be distinct");
    const std::uint32_t key = static_cast<std::uint32_t>(idx[0]) |
                              (static_cast<std::uint32_t>(idx[1]) << 8) |
                              (static_cast<std::uint32_t>(idx[2]) << 16) |
                              (static_cast<std::uint32_t>(idx[3]) << 24);
    if (const auto it = quad_cache_.find(key); it != quad_cache_.end())
        return it->second;
    Eigen::Matrix4d sub;
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s)
            sub(r, s) = r == s ? 1.0 : coherence_(idx[r], idx[s]);
    const double value = orthant::h_quad(orthant::Correlation4(sub));
    quad_cache_.emplace(key, value);
    return value;
}

// ---------------------------------------------------------------------------
// Signal-present moments of T'
// ---------------------------------------------------------------------------

namespace {

// Permutation counts and the tau/upsilon combinations behind the
// signal-present variance. Antenna indices are zero-based; index a + m
// addresses the imaginary component of antenna a in the expanded model.
struct H1Accumulator {
    const SignMomentTable& tab;
    int m;
    double n;
    double an2; // n(n-1)
    double an3; // n(n-1)(n-2)
    double n4;

    double h(int a, int b) const { return tab.pair(a, b); }
    double quad(int a, int b, int c, int d) const { return tab.quad(a, b, c, d); }

    double g_pair(int i, int j) const {
        const double hij = h(i, j);
        const double hpj = h(i + m, j);
        return 4.0 / (n * n) * (n + an2 * (hij * hij + hpj * hpj));
    }

    double g_quad(int i, int j, int k, int l) const {
        const double hij = h(i, j), hpj = h(i + m, j);
        const double hkl = h(k, l), hpl = h(k + m, l);
        return 32.0 * (n - 1.0) * (2.0 * n - 3.0) / (n * n * n) *
               (hij * hij + hpj * hpj) * (hkl * hkl + hpl * hpl);
    }

    double tau1(int i, int j) const {
        const int ip = i + m, jp = j + m;
        const double hij = h(i, j), hpj = h(ip, j);
        const double hq = quad(i, ip, j, jp);
        return 16.0 / n4 * an2 * (1.0 + hq * hq) +
               32.0 / n4 * an3 * ((hij * hij + hpj * hpj) + hq * (hij * hij - hpj * hpj));
    }

    double tau2(int i, int j, int k) const {
        const int ip = i + m, jp = j + m, kp = k + m;
        const double hjk = h(j, k), hjkp = h(j, kp);
        const double a = quad(i, ip, j, kp) + quad(i, ip, jp, k);
        const double b = quad(i, ip, j, k) - quad(i, ip, jp, kp);
        const double hik = h(i, k), hij = h(i, j);
        const double hpj = h(ip, j), hpk = h(ip, k);
        return 4.0 / n4 * an2 * (4.0 * (hjk * hjk + hjkp * hjkp) + a * a + b * b) +
               16.0 / n4 * an3 *
                   (b * (hik * hpj + hij * hpk) + a * (hik * hij - hpj * hpk) +
                    2.0 * hjk * (hik * hij + hpj * hpk) +
                    2.0 * hjkp * (hik * hpj - hij * hpk));
    }

    double tau3(int i, int j, int k, int l) const {
        const int ip = i + m, jp = j + m, kp = k + m, lp = l + m;
        const double u1 = quad(i, j, k, l) + quad(i, j, kp, lp) +
                          quad(ip, jp, k, l) + quad(ip, jp, kp, lp);
        const double u2 = quad(ip, j, kp, l) - quad(ip, j, k, lp) -
                          quad(i, jp, kp, l) + quad(i, jp, k, lp);
        const double u3 = quad(ip, j, k, l) + quad(ip, j, kp, lp) -
                          quad(i, jp, k, l) - quad(i, jp, kp, lp);
        const double u4 = quad(i, j, kp, l) - quad(i, j, k, lp) +
                          quad(ip, jp, kp, l) - quad(ip, jp, k, lp);
        const double hij = h(i, j), hkl = h(k, l);
        const double hpj = h(ip, j), hpl = h(kp, l);
        return 2.0 / n4 * an2 * (u1 * u1 + u2 * u2 + u3 * u3 + u4 * u4) +
               16.0 / n4 * an3 *
                   (u1 * hij * hkl + u2 * hpj * hpl + u3 * hkl * hpj + u4 * hij * hpl);
    }

    double f(int i, int j, int k, int l) const {
        if (i == k && j == l)
            return tau1(i, j);
        if (i == k)
            return tau2(i, j, l);
        if (i == l)
            return tau2(i, j, k);
        if (j == k)
            return tau2(j, i, l);
        if (j == l)
            return tau2(j, i, k);
        return tau3(j, i, k, l);
    }
};

} // namespace

MomentPair h1_moments(const Eigen::MatrixXd& expanded_coherence, int m, int n) {
    if (m < 2)
        throw invalid_input("h1_moments: m must be >= 2");
    if (n < 1)
        throw invalid_input("h1_moments: n must be >= 1");
    if (expanded_coherence.rows() != 2 * m || expanded_coherence.cols() != 2 * m)
        throw invalid_input("h1_moments: expanded coherence must be 2m x 2m");
    for (int a = 0; a < 2 * m; ++a)
        if (std::abs(expanded_coherence(a, a) - 1.0) > 1e-10)
            throw invalid_input("h1_moments: expanded coherence must have unit diagonal");

    SignMomentTable tab(expanded_coherence);
    const double nd = n;
    H1Accumulator acc{tab, m, nd, nd * (nd - 1.0), nd * (nd - 1.0) * (nd - 2.0),
                      nd * nd * nd * nd};

    double mean_sum = 0.0;
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            mean_sum += acc.g_pair(i, j);
    const double mu = mean_sum / (2.0 * m * (m - 1));

    double var_sum = 0.0;
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < j; ++i)
            for (int l = 1; l < m; ++l)
                for (int k = 0; k < l; ++k)
                    var_sum += acc.f(i, j, k, l) - acc.g_quad(i, j, k, l);
    const double sigma2 = var_sum / (4.0 * static_cast<double>(m) * m * (m - 1.0) * (m - 1.0));

    return {mu, sigma2};
}

} // namespace onebit::dist

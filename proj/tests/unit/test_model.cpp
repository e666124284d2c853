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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "onebit/errors.hpp"
#include "onebit/model.hpp"

using namespace onebit;
using namespace std::complex_literals;

namespace {

model::PopulationModel two_antenna_example() {
    // H = [1, 1]^T / sqrt(2), Rs = [2], Rw = I2
    Eigen::MatrixXcd h(2, 1);
    h << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd rs(1, 1);
    rs << 2.0;
    return model::build_population({2, 1, 4}, h, rs, Eigen::VectorXd::Ones(2),
                                   model::Hypothesis::SignalPresent);
}

} // namespace

TEST_CASE("dims validation") {
    CHECK_THROWS_AS(model::validate({1, 1, 1}), invalid_input);
    CHECK_THROWS_AS(model::validate({2, 0, 1}), invalid_input);
    CHECK_THROWS_AS(model::validate({2, 1, 0}), invalid_input);
    CHECK_NOTHROW(model::validate({2, 1, 1}));
}

TEST_CASE("noise-only population is white") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(3, 2);
    Eigen::MatrixXcd rs = Eigen::MatrixXcd::Identity(2, 2);
    const auto pop = model::build_population({3, 2, 5}, h, rs, Eigen::VectorXd::Ones(3),
                                             model::Hypothesis::NoiseOnly);
    CHECK((pop.cov - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
    CHECK((pop.coherence - Eigen::MatrixXcd::Identity(3, 3)).norm() == 0.0);
    CHECK(pop.theta.norm() == 0.0);
}

TEST_CASE("rank-one signal population") {
    const auto pop = two_antenna_example();
    CHECK(pop.cov(0, 0).real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(pop.cov(0, 1).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pop.cov(1, 1).real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(pop.coherence(0, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
    // theta reads the unit-diagonal expanded coherence directly
    REQUIRE(pop.theta.size() == 2);
    CHECK(pop.theta[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pop.theta[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("zero signal covariance reduces to the null population") {
    Eigen::MatrixXcd h(2, 1);
    h << 0.3 + 0.4i, -0.7;
    Eigen::MatrixXcd rs = Eigen::MatrixXcd::Zero(1, 1);
    const auto sig = model::build_population({2, 1, 4}, h, rs, Eigen::VectorXd::Ones(2),
                                             model::Hypothesis::SignalPresent);
    const auto nul = model::build_population({2, 1, 4}, h, rs, Eigen::VectorXd::Ones(2),
                                             model::Hypothesis::NoiseOnly);
    CHECK((sig.cov - nul.cov).norm() == 0.0);
    CHECK(sig.theta.norm() == 0.0);
}

TEST_CASE("population validation errors") {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(2, 1);
    Eigen::MatrixXcd rs_bad(1, 1);
    rs_bad << -1.0; // negative definite
    CHECK_THROWS_AS(model::build_population({2, 1, 4}, h, rs_bad, Eigen::VectorXd::Ones(2),
                                            model::Hypothesis::SignalPresent),
                    invalid_input);

    Eigen::MatrixXcd rs(1, 1);
    rs << 1.0;
    Eigen::VectorXd bad_noise(2);
    bad_noise << 1.0, 0.0;
    CHECK_THROWS_AS(model::build_population({2, 1, 4}, h, rs, bad_noise,
                                            model::Hypothesis::SignalPresent),
                    invalid_input);

    CHECK_THROWS_AS(model::build_population({3, 1, 4}, h, rs, Eigen::VectorXd::Ones(3),
                                            model::Hypothesis::SignalPresent),
                    invalid_input);
}

TEST_CASE("theta extraction: ordering, sparsity, validation") {
    CHECK(model::theta_from_coherence(Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);

    Eigen::MatrixXcd p2 = Eigen::MatrixXcd::Identity(2, 2);
    p2(0, 1) = 0.3 + 0.4i;
    p2(1, 0) = 0.3 - 0.4i;
    const auto theta2 = model::theta_from_coherence(p2);
    REQUIRE(theta2.size() == 2);
    CHECK(theta2[0] == doctest::Approx(0.3));
    CHECK(theta2[1] == doctest::Approx(0.4));

    // only the (1,3) entry set: pair order is (1,2), (1,3), (2,3)
    Eigen::MatrixXcd p3 = Eigen::MatrixXcd::Identity(3, 3);
    p3(0, 2) = 0.2 - 0.1i;
    p3(2, 0) = 0.2 + 0.1i;
    const auto theta3 = model::theta_from_coherence(p3);
    REQUIRE(theta3.size() == 6);
    CHECK(theta3[0] == 0.0);
    CHECK(theta3[1] == doctest::Approx(0.2));
    CHECK(theta3[2] == 0.0);
    CHECK(theta3[3] == 0.0);
    CHECK(theta3[4] == doctest::Approx(-0.1));
    CHECK(theta3[5] == 0.0);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(model::theta_from_coherence(bad), invalid_input);
}

TEST_CASE("expanded coherence block structure") {
    Eigen::MatrixXcd p2 = Eigen::MatrixXcd::Identity(2, 2);
    p2(0, 1) = 0.3 + 0.4i;
    p2(1, 0) = 0.3 - 0.4i;
    const Eigen::MatrixXd e = model::expanded_coherence(p2);
    REQUIRE(e.rows() == 4);
    CHECK((e - e.transpose()).norm() == 0.0);
    CHECK(e(0, 1) == doctest::Approx(0.3));
    CHECK(e(0, 3) == doctest::Approx(-0.4));
    CHECK(e(2, 1) == doctest::Approx(0.4));
    CHECK(e(2, 3) == doctest::Approx(0.3));
    CHECK(e.diagonal().isOnes());
}

TEST_CASE("quantizer") {
    model::SampleBatch batch;
    batch.data.resize(2, 2);
    batch.data << 0.3 - 0.2i, -5.0 + 0.001i, 0.0 + 0.0i, -0.0 - 1e-9i;
    const auto q = model::quantize(batch);
    CHECK(q.quantized);
    CHECK(q.data(0, 0) == 1.0 - 1.0i);
    CHECK(q.data(0, 1) == -1.0 + 1.0i);
    // sign(0) := +1, including negative zero
    CHECK(q.data(1, 0) == 1.0 + 1.0i);
    CHECK(q.data(1, 1) == 1.0 - 1.0i);

    // idempotent on sign values
    const auto qq = model::quantize(q);
    CHECK((qq.data - q.data).norm() == 0.0);

    for (int i = 0; i < q.data.size(); ++i) {
        CHECK(std::abs(q.data(i).real()) == 1.0);
        CHECK(std::abs(q.data(i).imag()) == 1.0);
    }
}

TEST_CASE("channel generation") {
    RngStream rng = RngStream::derive(123, 7);
    const auto h = model::generate_channel({6, 3, 1}, rng);
    for (int j = 0; j < 3; ++j)
        CHECK(h.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));

    RngStream rng2 = RngStream::derive(123, 7);
    const auto h2 = model::generate_channel({6, 3, 1}, rng2);
    CHECK((h - h2).norm() == 0.0);

    RngStream rng3(55);
    const auto h1 = model::generate_channel({2, 1, 1}, rng3);
    CHECK(std::abs(h1.col(0).norm() - 1.0) < 1e-12);
}

TEST_CASE("snr scaling") {
    const Eigen::MatrixXcd rs = Eigen::MatrixXcd::Identity(3, 3);
    const Eigen::VectorXd rw = Eigen::VectorXd::Ones(4);

    const auto same = model::scale_for_snr(rs, rw, 0.0);
    CHECK(same(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));

    const auto low = model::scale_for_snr(rs, rw, -7.0);
    CHECK(low(0, 0).real() == doctest::Approx(std::pow(10.0, -0.7)).epsilon(1e-12));

    // doubling the noise doubles the required signal power
    const auto doubled = model::scale_for_snr(rs, 2.0 * rw, -7.0);
    CHECK(doubled(0, 0).real() == doctest::Approx(2.0 * low(0, 0).real()).epsilon(1e-12));

    // round trip within 1e-9 dB
    for (double snr : {-20.0, -5.0, 0.0, 3.0, 15.0}) {
        const auto scaled = model::scale_for_snr(rs, rw, snr);
        CHECK(model::snr_db_of(scaled, rw) == doctest::Approx(snr).epsilon(1e-10));
    }

    CHECK_THROWS_AS(model::scale_for_snr(Eigen::MatrixXcd::Zero(2, 2), rw, 0.0),
                    invalid_input);
}

TEST_CASE("gaussian sampling: white moments") {
    const int m = 3;
    const long n = 1'000'000;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(m, 1);
    Eigen::MatrixXcd rs = Eigen::MatrixXcd::Identity(1, 1);
    const auto pop = model::build_population({m, 1, 1}, h, rs, Eigen::VectorXd::Ones(m),
                                             model::Hypothesis::NoiseOnly);
    RngStream rng(321);
    const auto batch = model::sample_gaussian(pop, n, rng);
    const Eigen::MatrixXcd cov = (batch.data * batch.data.adjoint()) / double(n);
    CHECK((cov - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() < 5e-3);

    // circularity: the unconjugated second moment vanishes
    const Eigen::MatrixXcd pseudo = (batch.data * batch.data.transpose()) / double(n);
    CHECK(pseudo.cwiseAbs().maxCoeff() < 5e-3);
}

TEST_CASE("gaussian sampling: scaled variance") {
    const int m = 2;
    const long n = 400'000;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Ones(m, 1);
    Eigen::MatrixXcd rs = Eigen::MatrixXcd::Identity(1, 1);
    const auto pop = model::build_population({m, 1, 1}, h, rs,
                                             Eigen::VectorXd::Constant(m, 4.0),
                                             model::Hypothesis::NoiseOnly);
    RngStream rng(77);
    const auto batch = model::sample_gaussian(pop, n, rng);
    for (int i = 0; i < m; ++i) {
        const double var = batch.data.row(i).squaredNorm() / double(n);
        CHECK(var == doctest::Approx(4.0).epsilon(0.01));
    }
}

TEST_CASE("gaussian sampling: expanded real covariance has the circular block form") {
    const int m = 3;
    const long n = 400'000;
    RngStream hrng(9);
    const auto h = model::generate_channel({m, 2, 1}, hrng);
    const Eigen::MatrixXcd rs = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
    const auto pop = model::build_population({m, 2, 1}, h, rs, Eigen::VectorXd::Ones(m),
                                             model::Hypothesis::SignalPresent);
    RngStream rng(1000);
    const auto batch = model::sample_gaussian(pop, n, rng);

    Eigen::MatrixXd stacked(2 * m, n);
    stacked.topRows(m) = batch.data.real();
    stacked.bottomRows(m) = batch.data.imag();
    const Eigen::MatrixXd est = (stacked * stacked.transpose()) / double(n);

    Eigen::MatrixXd expected(2 * m, 2 * m);
    expected.topLeftCorner(m, m) = 0.5 * pop.cov.real();
    expected.topRightCorner(m, m) = -0.5 * pop.cov.imag();
    expected.bottomLeftCorner(m, m) = 0.5 * pop.cov.imag();
    expected.bottomRightCorner(m, m) = 0.5 * pop.cov.real();
    CHECK((est - expected).cwiseAbs().maxCoeff() < 2e-2);
}

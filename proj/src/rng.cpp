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

#include "onebit/rng.hpp"

#include <cmath>

namespace onebit {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

RngStream::RngStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_)
        w = splitmix64(s);
}

RngStream RngStream::derive(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = master_seed;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0xD1B54A32D192ED03ULL;
    h ^= splitmix64(s);
    s ^= b * 0x8CB92BA72F3D8DD7ULL;
    h ^= splitmix64(s);
    return RngStream(h);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void RngStream::fill_normal_pair(double& a, double& b) {
    // Marsaglia polar method: rejection keeps the stream deterministic and
    // avoids trig calls in the hot path.
    double u, v, s;
    do {
        u = 2.0 * next_double() - 1.0;
        v = 2.0 * next_double() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double g = std::sqrt(-2.0 * std::log(s) / s);
    a = u * g;
    b = v * g;
}

double RngStream::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double a, b;
    fill_normal_pair(a, b);
    spare_ = b;
    has_spare_ = true;
    return a;
}

std::complex<double> RngStream::next_cnormal() {
    double a, b;
    fill_normal_pair(a, b);
    return {a * 0.7071067811865475244, b * 0.7071067811865475244};
}

} // namespace onebit

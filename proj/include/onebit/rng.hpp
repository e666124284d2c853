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

#include <array>
#include <complex>
#include <cstdint>

namespace onebit {

/// One SplitMix64 step; used for seeding and stream derivation.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic random stream (xoshiro256++ core, polar-method normals).
///
/// Every source of randomness in the project flows through streams derived
/// from a single master seed, so campaigns are reproducible byte-for-byte
/// regardless of thread count or platform. std:: distributions are avoided
/// on purpose: their output is implementation-defined.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    /// Derive an independent substream from (master_seed, a, b).
    /// Identical triples always yield identical streams.
    static RngStream derive(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b = 0);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double next_double();

    /// Standard normal N(0, 1).
    double next_normal();

    /// Circular complex normal CN(0, 1): real and imaginary parts are
    /// independent N(0, 1/2).
    std::complex<double> next_cnormal();

  private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;

    void fill_normal_pair(double& a, double& b);
};

} // namespace onebit

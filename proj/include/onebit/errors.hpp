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

#include <stdexcept>
#include <string>

namespace onebit {

/// Bad user-supplied input: malformed configs, invalid model parameters,
/// arguments outside their documented domain. Maps to CLI exit code 1.
class invalid_input : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: non-convergent series or quadrature, failed
/// factorizations, degenerate denominators. Maps to CLI exit code 2.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Moment pair outside the Beta-feasible region (sigma^2 >= mu(1-mu)).
class fit_infeasible : public numeric_error {
  public:
    using numeric_error::numeric_error;
};

/// File-system failure while reading configs or writing results.
/// Maps to CLI exit code 3.
class io_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace onebit

// SPDX-License-Identifier: Apache-2.0
//
// risopt: RIS phase configuration and transmit time-switching power allocation
// Copyright (C) 2026 The risopt authors
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

#include <functional>
#include <vector>

#include "risopt/zf_prc.hpp"

namespace risopt::detail {

/// d_n = (H_BR X H_R)(n, n) for X of size M x K.
std::vector<cplx> element_traces(const ChannelSet& ch, const CMatrix& x);

/// C(n, m) = (H_R^H S H_R)(n, m) * (H_BR T H_BR^H)(m, n).
HermitianMatrix element_curvature(const ChannelSet& ch, const CMatrix& s, const CMatrix& t);

double mean_diagonal(const HermitianMatrix& a);

using CoefficientFn = std::function<std::vector<cplx>(const PhaseVector&)>;
using ObjectiveFn = std::function<double(const PhaseVector&)>;
using SurrogateFn = std::function<PhaseSurrogate(const PhaseVector&)>;

/// Closed-form step with incumbent tracking; `maximize` selects the sense.
PrcRunReport run_step_descent(const ChannelSet& ch, const PhaseVector& theta0, StepRule rule,
                              const PrcOptions& options, const CoefficientFn& coefficients,
                              const ObjectiveFn& objective, bool maximize);

/// Monotone ascent by maximizing the relaxed phase surrogate.
PrcRunReport run_full_step(const ChannelSet& ch, const PhaseVector& theta0, const PrcOptions& options,
                           const SurrogateFn& surrogate, const ObjectiveFn& objective);

/// Retries `run` from fresh random phases when an iterate is rank deficient.
PrcRunReport with_restarts(const ChannelSet& ch, const PhaseVector& theta0, const PrcOptions& options,
                           const std::function<PrcRunReport(const PhaseVector&)>& run);

}  // namespace risopt::detail

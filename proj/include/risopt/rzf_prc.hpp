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

#include "risopt/zf_prc.hpp"

namespace risopt {

double rzf_trace_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha);

/// 0.1 times the mean diagonal of H^H H at theta.
double default_rzf_alpha(const ChannelSet& channels, const PhaseVector& theta);

PrcRunReport rzf_trace_maximize(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                                const PrcOptions& options = {});

/// ln|alpha I_K + H H^H|.
double logdet_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha);

/// c_n = <H^H A H_n> for A = (alpha I_K + H H^H)^{-1}.
std::vector<cplx> logdet_direction(const ChannelSet& channels, const PhaseVector& theta, double alpha);

/// Tangent minorant of logdet_objective at the anchor.
PhaseSurrogate logdet_surrogate(const ChannelSet& channels, const PhaseVector& anchor, double alpha);

PrcRunReport logdet_step_descent(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                                 StepRule rule, const PrcOptions& options = {});

PrcRunReport logdet_full_step(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                              const PrcOptions& options = {});

}  // namespace risopt

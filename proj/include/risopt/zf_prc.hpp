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

#include <cstdint>
#include <span>
#include <vector>

#include "risopt/channel.hpp"
#include "risopt/cxmat.hpp"

namespace risopt {

enum class StepRule { Plain, BB, PBB };

struct PrcOptions {
  int max_iter = 500;
  double tol = 1e-3;
  /// Step-descent runs stop once the incumbent is unimproved this many times.
  int stall_limit = 20;
  /// Fresh random starts after a rank-deficient iterate.
  int max_restarts = 3;
  std::uint64_t seed = 1;
};

struct PrcRunReport {
  PhaseVector theta_opt;
  std::vector<double> objective_trace;  // entry 0 is the initial point
  int iterations = 0;
  bool converged = false;
  int restarts = 0;
  /// True when the algorithm maximizes its traced objective.
  bool ascending = false;
};

/// a + 2 Re sum_n u_n b_n - u^H C u with u_n = exp(j theta_n).
struct PhaseSurrogate {
  double constant = 0.0;
  std::vector<cplx> b;
  HermitianMatrix C;

  double evaluate(const PhaseVector& theta) const;
};

PhaseVector random_phases(int n, std::uint64_t seed);

/// trace((H H^H)^{-1}); throws RankDeficient when the Gram is singular.
double zf_objective(const ChannelSet& channels, const PhaseVector& theta);

/// ZF precoder H^H (H H^H)^{-1} (M x K), from a QR factorization of H^H.
CMatrix zf_precoder(const ChannelSet& channels, const PhaseVector& theta);

/// Diagonal of (H H^H)^{-1} from the same factorization.
std::vector<double> zf_inverse_diagonal(const ChannelSet& channels, const PhaseVector& theta);

/// theta_n = -arg(c_n), with c_n = 0 mapped to 0.
PhaseVector phase_argmax(std::span<const cplx> c);

/// c_n = <H^H A H_n> for A = (H H^H)^{-2}.
std::vector<cplx> zf_direction(const ChannelSet& channels, const PhaseVector& theta);

/// g_alpha(theta) = <H (alpha I + H^H H)^{-1} H^H>.
double trace_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha);

/// Tangent minorant of trace_objective at the anchor.
PhaseSurrogate trace_surrogate(const ChannelSet& channels, const PhaseVector& anchor, double alpha);

/// 1e-3 times the mean diagonal of H H^H at theta.
double default_perturbation(const ChannelSet& channels, const PhaseVector& theta);

PrcRunReport step_descent(const ChannelSet& channels, const PhaseVector& theta0, StepRule rule,
                          const PrcOptions& options = {});

/// alpha0 <= 0 selects 10 lambda_max of a probe curvature matrix.
PrcRunReport full_step_concave(const ChannelSet& channels, const PhaseVector& theta0, double alpha0 = 0.0,
                               const PrcOptions& options = {});

/// alpha <= 0 selects default_perturbation(theta0).
PrcRunReport full_step_perturbed(const ChannelSet& channels, const PhaseVector& theta0, double alpha = 0.0,
                                 const PrcOptions& options = {});

/// ln(1 + P / (sigma trace((H H^H)^{-1}))).
double zf_throughput(const ChannelSet& channels, const PhaseVector& theta, double P, double sigma);

}  // namespace risopt

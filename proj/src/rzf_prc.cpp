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

#include "risopt/rzf_prc.hpp"

#include <cmath>
#include <string>

#include "prc_internal.hpp"
#include "risopt/errors.hpp"

namespace risopt {

namespace {

void require_alpha(double alpha, const char* where) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError(std::string(where) + ": alpha must be positive");
}

}  // namespace

double rzf_trace_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha) {
  return trace_objective(channels, theta, alpha);
}

double default_rzf_alpha(const ChannelSet& channels, const PhaseVector& theta) {
  return 0.1 * detail::mean_diagonal(HermitianMatrix::gram_adjoint(compose(channels, theta)));
}

PrcRunReport rzf_trace_maximize(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                                const PrcOptions& options) {
  require_alpha(alpha, "rzf_trace_maximize");
  return detail::run_full_step(
      channels, theta0, options, [&](const PhaseVector& t) { return trace_surrogate(channels, t, alpha); },
      [&](const PhaseVector& t) { return trace_objective(channels, t, alpha); });
}

double logdet_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha) {
  require_alpha(alpha, "logdet_objective");
  return logdet(HermitianMatrix::gram(compose(channels, theta)).shifted(alpha));
}

std::vector<cplx> logdet_direction(const ChannelSet& channels, const PhaseVector& theta, double alpha) {
  require_alpha(alpha, "logdet_direction");
  const CMatrix h = compose(channels, theta);
  const HermitianMatrix a = hermitian_inverse(HermitianMatrix::gram(h).shifted(alpha));
  return detail::element_traces(channels, adjoint_times(h, a.matrix()));
}

PhaseSurrogate logdet_surrogate(const ChannelSet& channels, const PhaseVector& anchor, double alpha) {
  require_alpha(alpha, "logdet_surrogate");
  const CMatrix h = compose(channels, anchor);
  const CMatrix hh = h.adjoint();
  const CMatrix q = h * hermitian_solve(HermitianMatrix::gram_adjoint(h).shifted(alpha), hh);
  PhaseSurrogate s;
  s.constant = logdet(HermitianMatrix::gram(h).shifted(alpha)) - h.norm2() / alpha - q.trace().real();
  s.b = detail::element_traces(channels, hh);
  for (auto& v : s.b) v /= alpha;
  s.C = detail::element_curvature(channels, q, CMatrix::identity(static_cast<std::size_t>(channels.M)))
            .scaled(1.0 / alpha);
  return s;
}

PrcRunReport logdet_step_descent(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                                 StepRule rule, const PrcOptions& options) {
  require_alpha(alpha, "logdet_step_descent");
  return detail::run_step_descent(
      channels, theta0, rule, options, [&](const PhaseVector& t) { return logdet_direction(channels, t, alpha); },
      [&](const PhaseVector& t) { return logdet_objective(channels, t, alpha); }, true);
}

PrcRunReport logdet_full_step(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                              const PrcOptions& options) {
  require_alpha(alpha, "logdet_full_step");
  return detail::run_full_step(
      channels, theta0, options, [&](const PhaseVector& t) { return logdet_surrogate(channels, t, alpha); },
      [&](const PhaseVector& t) { return logdet_objective(channels, t, alpha); });
}

}  // namespace risopt

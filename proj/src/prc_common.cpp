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

#include <algorithm>
#include <cmath>

#include "prc_internal.hpp"
#include "risopt/errors.hpp"

namespace risopt::detail {

std::vector<cplx> element_traces(const ChannelSet& ch, const CMatrix& x) {
  const CMatrix y = x * ch.H_R;  // M x N
  std::vector<cplx> d(static_cast<std::size_t>(ch.N));
  for (std::size_t n = 0; n < d.size(); ++n) {
    cplx s{};
    for (std::size_t m = 0; m < y.rows(); ++m) s += ch.H_BR(n, m) * y(m, n);
    d[n] = s;
  }
  return d;
}

HermitianMatrix element_curvature(const ChannelSet& ch, const CMatrix& s, const CMatrix& t) {
  const CMatrix r = adjoint_times(ch.H_R, s * ch.H_R);
  const CMatrix b = times_adjoint(ch.H_BR * t, ch.H_BR);
  CMatrix c(r.rows(), r.cols());
  for (std::size_t n = 0; n < c.rows(); ++n)
    for (std::size_t m = 0; m < c.cols(); ++m) c(n, m) = r(n, m) * b(m, n);
  return HermitianMatrix(c);
}

double mean_diagonal(const HermitianMatrix& a) { return a.trace() / static_cast<double>(a.dim()); }

namespace {

std::vector<double> wrapped_difference(const PhaseVector& a, const PhaseVector& b) {
  std::vector<double> d(static_cast<std::size_t>(a.size()));
  for (int n = 0; n < a.size(); ++n) d[static_cast<std::size_t>(n)] = wrap_angle_signed(a[n] - b[n]);
  return d;
}

// Barzilai-Borwein ratio |<s, s - s_prev>| / ||s - s_prev||^2; 1 when undefined.
template <typename T>
double bb_ratio(const std::vector<T>& s, const std::vector<T>& s_prev) {
  if (s_prev.size() != s.size()) return 1.0;
  cplx num{};
  double den = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const T diff = s[i] - s_prev[i];
    num += std::conj(cplx(s[i])) * cplx(diff);
    den += std::norm(cplx(diff));
  }
  if (!(den > 0.0)) return 1.0;
  const double r = std::abs(num) / den;
  return std::isfinite(r) && r > 0.0 ? r : 1.0;
}

}  // namespace

PrcRunReport run_step_descent(const ChannelSet& ch, const PhaseVector& theta0, StepRule rule,
                              const PrcOptions& options, const CoefficientFn& coefficients,
                              const ObjectiveFn& objective, bool maximize) {
  (void)ch;
  PrcRunReport rep;
  rep.ascending = maximize;
  PhaseVector theta = theta0;
  rep.theta_opt = theta0;
  double best = objective(theta0);
  rep.objective_trace.push_back(best);
  auto better = [&](double v) { return maximize ? v > best : v < best; };

  std::vector<double> psi_prev;
  std::vector<cplx> phasor_step_prev;
  int stall = 0;
  for (int it = 1; it <= options.max_iter; ++it) {
    rep.iterations = it;
    const PhaseVector target = phase_argmax(coefficients(theta));
    PhaseVector next;
    switch (rule) {
      case StepRule::Plain:
        next = target;
        break;
      case StepRule::BB: {
        const auto psi = wrapped_difference(target, theta);
        const double step = bb_ratio(psi, psi_prev);
        std::vector<double> t(psi.size());
        for (std::size_t n = 0; n < t.size(); ++n) t[n] = theta[static_cast<int>(n)] + step * psi[n];
        next = PhaseVector(std::move(t));
        psi_prev = psi;
        break;
      }
      case StepRule::PBB: {
        const auto u = theta.phasors();
        const auto v = target.phasors();
        std::vector<cplx> psi(u.size());
        for (std::size_t n = 0; n < u.size(); ++n) psi[n] = v[n] - u[n];
        const double step = bb_ratio(psi, phasor_step_prev);
        std::vector<cplx> w(u.size());
        for (std::size_t n = 0; n < u.size(); ++n) {
          w[n] = u[n] + step * psi[n];
          if (std::abs(w[n]) < 1e-300) w[n] = u[n];
        }
        next = PhaseVector::from_phasors(w);
        phasor_step_prev = psi;
        break;
      }
    }
    const double change = next.max_angular_distance(theta);
    theta = next;
    const double value = objective(theta);
    if (better(value)) {
      best = value;
      rep.theta_opt = theta;
      stall = 0;
    } else {
      ++stall;
    }
    rep.objective_trace.push_back(best);
    if (change <= options.tol || stall >= options.stall_limit) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

PrcRunReport run_full_step(const ChannelSet& ch, const PhaseVector& theta0, const PrcOptions& options,
                           const SurrogateFn& surrogate, const ObjectiveFn& objective) {
  (void)ch;
  PrcRunReport rep;
  rep.ascending = true;
  PhaseVector theta = theta0;
  double value = objective(theta);
  rep.objective_trace.push_back(value);
  std::vector<cplx> eig_start;

  auto propose = [&](const PhaseSurrogate& s, double lambda) {
    const auto u = theta.phasors();
    std::vector<cplx> d(u.size());
    const CMatrix& c = s.C.matrix();
    for (std::size_t n = 0; n < u.size(); ++n) {
      cplx uc{};
      for (std::size_t m = 0; m < u.size(); ++m) uc += std::conj(u[m]) * c(m, n);
      d[n] = s.b[n] - uc + lambda * std::conj(u[n]);
    }
    return phase_argmax(d);
  };

  for (int it = 1; it <= options.max_iter; ++it) {
    rep.iterations = it;
    const PhaseSurrogate s = surrogate(theta);
    double lambda = 0.0;
    bool estimated = false;
    try {
      const EigenEstimate e = dominant_eigenpair(s.C, eig_start);
      lambda = e.value + e.residual;
      eig_start = e.vector;
      estimated = true;
    } catch (const ConvergenceFailure&) {
    }
    if (!estimated) lambda = s.C.matrix().norm();

    PhaseVector next = propose(s, lambda);
    double next_value = objective(next);
    if (next_value < value && estimated) {
      // The eigenvalue estimate was too small to majorize; use the Frobenius bound.
      next = propose(s, s.C.matrix().norm());
      next_value = objective(next);
    }
    if (next_value < value) {
      rep.converged = true;
      break;
    }
    const double change = next.max_angular_distance(theta);
    theta = next;
    value = next_value;
    rep.objective_trace.push_back(value);
    if (change <= options.tol) {
      rep.converged = true;
      break;
    }
  }
  rep.theta_opt = theta;
  return rep;
}

PrcRunReport with_restarts(const ChannelSet& ch, const PhaseVector& theta0, const PrcOptions& options,
                           const std::function<PrcRunReport(const PhaseVector&)>& run) {
  PhaseVector start = theta0;
  for (int attempt = 0;; ++attempt) {
    try {
      PrcRunReport rep = run(start);
      rep.restarts = attempt;
      return rep;
    } catch (const NotPositiveDefinite&) {
      if (attempt >= options.max_restarts) throw RankDeficient("phase optimization: singular Gram after restarts");
    } catch (const RankDeficient&) {
      if (attempt >= options.max_restarts) throw;
    }
    start = random_phases(ch.N, options.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1));
  }
}

}  // namespace risopt::detail

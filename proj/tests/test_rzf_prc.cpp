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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "risopt/channel.hpp"
#include "risopt/errors.hpp"
#include "risopt/rzf_prc.hpp"

using namespace risopt;
using risopt::testing::adjugate_inverse;
using risopt::testing::cofactor_det;

namespace {

ChannelSet instance(std::uint64_t seed, int M = 6, int N = 12, int K = 3) {
  Scenario s;
  s.M = M;
  s.N = N;
  s.K = K;
  s.K_E = 0;
  s.seed = seed;
  return generate(s);
}

bool monotone_up(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - 1e-9 * std::max(1.0, std::abs(v[i - 1]))) return false;
  return true;
}

}  // namespace

TEST_CASE("rzf trace objective") {
  ChannelSet zero;
  zero.M = 2;
  zero.N = 1;
  zero.K = 2;
  zero.H_n = {CMatrix(2, 2)};
  CHECK(rzf_trace_objective(zero, PhaseVector::zeros(1), 1.0) == doctest::Approx(0.0));

  for (std::uint64_t s = 0; s < 10; ++s) {
    const ChannelSet ch = instance(s);
    const PhaseVector th = random_phases(ch.N, s);
    const CMatrix h = compose(ch, th);
    const double scale = HermitianMatrix::gram(h)(0, 0).real();
    // Small regularization recovers K.
    CHECK(rzf_trace_objective(ch, th, 1e-9 * scale) == doctest::Approx(3.0).epsilon(1e-6));
    const double alpha = 0.3 * scale;
    CMatrix reg = HermitianMatrix::gram_adjoint(h).shifted(alpha).matrix();
    const double oracle = (h * adjugate_inverse(reg) * h.adjoint()).trace().real();
    CHECK(std::abs(rzf_trace_objective(ch, th, alpha) - oracle) <= 1e-9 * oracle);
    CHECK(default_rzf_alpha(ch, th) > 0.0);
  }
  CHECK_THROWS(rzf_trace_objective(instance(0), PhaseVector::zeros(12), 0.0));
}

TEST_CASE("logdet objective") {
  ChannelSet zero;
  zero.M = 2;
  zero.N = 1;
  zero.K = 3;
  zero.H_n = {CMatrix(3, 2)};
  CHECK(logdet_objective(zero, PhaseVector::zeros(1), 2.0) == doctest::Approx(3.0 * std::log(2.0)));

  for (std::uint64_t s = 0; s < 10; ++s) {
    const ChannelSet ch = instance(s);
    const PhaseVector th = random_phases(ch.N, s);
    const CMatrix h = compose(ch, th);
    const double alpha = default_rzf_alpha(ch, th);
    const cplx det = cofactor_det(HermitianMatrix::gram(h).shifted(alpha).matrix());
    CHECK(std::abs(det.imag()) <= 1e-9 * std::abs(det));
    CHECK(logdet_objective(ch, th, alpha) == doctest::Approx(std::log(det.real())).epsilon(1e-10));
  }
}

TEST_CASE("logdet direction matches finite differences") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ChannelSet ch = instance(s);
    const PhaseVector th = random_phases(ch.N, s + 40);
    const double alpha = default_rzf_alpha(ch, th);
    const auto c = logdet_direction(ch, th, alpha);
    const auto u = th.phasors();
    for (int n = 0; n < ch.N; ++n) {
      const double h = 1e-6;
      std::vector<double> plus = th.angles(), minus = th.angles();
      plus[n] += h;
      minus[n] -= h;
      const double fd = (logdet_objective(ch, PhaseVector(plus), alpha) -
                         logdet_objective(ch, PhaseVector(minus), alpha)) / (2.0 * h);
      const double analytic = -2.0 * (u[n] * c[n]).imag();
      CHECK(std::abs(fd - analytic) <= 1e-4 * std::max(1e-6, std::abs(analytic)) + 1e-8);
    }
  }
}

TEST_CASE("logdet surrogate is a tangent minorant") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ChannelSet ch = instance(s);
    const PhaseVector anchor = random_phases(ch.N, s + 3);
    const double alpha = default_rzf_alpha(ch, anchor);
    const PhaseSurrogate m = logdet_surrogate(ch, anchor, alpha);
    const double f = logdet_objective(ch, anchor, alpha);
    CHECK(std::abs(m.evaluate(anchor) - f) <= 1e-9 * std::max(1.0, std::abs(f)));
    for (std::uint64_t t = 0; t < 200; ++t) {
      const PhaseVector th = random_phases(ch.N, 1000 * s + t);
      CHECK(m.evaluate(th) <= logdet_objective(ch, th, alpha) + 1e-9 * std::max(1.0, std::abs(f)));
    }
  }
}

TEST_CASE("determinant identity between the two Gram orders") {
  const ChannelSet ch = instance(9, 4, 8, 3);
  const PhaseVector th = random_phases(ch.N, 9);
  const CMatrix h = compose(ch, th);
  const double alpha = 0.7;
  const double lhs = logdet(HermitianMatrix::gram(h).shifted(alpha));
  const double rhs = logdet(HermitianMatrix::gram_adjoint(h).shifted(alpha)) + (3.0 - 4.0) * std::log(alpha);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("rzf algorithms ascend") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const ChannelSet ch = instance(s);
    const PhaseVector t0 = random_phases(ch.N, s + 5);
    const double alpha = default_rzf_alpha(ch, t0);
    PrcOptions o;
    o.max_iter = 100;

    const PrcRunReport tr = rzf_trace_maximize(ch, t0, alpha, o);
    CHECK(tr.ascending);
    CHECK(monotone_up(tr.objective_trace));
    CHECK(rzf_trace_objective(ch, tr.theta_opt, alpha) == doctest::Approx(tr.objective_trace.back()));

    const PrcRunReport full = logdet_full_step(ch, t0, alpha, o);
    CHECK(monotone_up(full.objective_trace));
    CHECK(full.objective_trace.back() >= logdet_objective(ch, t0, alpha));

    const PrcRunReport step = logdet_step_descent(ch, t0, alpha, StepRule::PBB, o);
    CHECK(monotone_up(step.objective_trace));
    CHECK(logdet_objective(ch, step.theta_opt, alpha) == doctest::Approx(step.objective_trace.back()));
  }
}

TEST_CASE("logdet ascent approaches a stationary point") {
  const ChannelSet ch = instance(17);
  const PhaseVector t0 = random_phases(ch.N, 17);
  const double alpha = default_rzf_alpha(ch, t0);
  auto gradient = [&](const PhaseVector& th) {
    const auto c = logdet_direction(ch, th, alpha);
    const auto u = th.phasors();
    double g = 0.0;
    for (int n = 0; n < ch.N; ++n) g = std::max(g, std::abs((u[n] * c[n]).imag()));
    return g;
  };
  PrcOptions o;
  o.max_iter = 3000;
  o.tol = 1e-10;
  o.stall_limit = 3000;
  const double g0 = gradient(t0);
  const PrcRunReport full = logdet_full_step(ch, t0, alpha, o);
  const PrcRunReport step = logdet_step_descent(ch, t0, alpha, StepRule::PBB, o);
  CHECK(gradient(full.theta_opt) <= 1e-1 * g0);
  CHECK(gradient(step.theta_opt) <= 1e-3 * g0);
}

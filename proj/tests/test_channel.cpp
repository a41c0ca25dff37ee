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
#include <numbers>

#include "oracles.hpp"
#include "risopt/channel.hpp"
#include "risopt/errors.hpp"
#include "risopt/zf_prc.hpp"

using namespace risopt;
using risopt::testing::max_abs_diff;

namespace {

Scenario small(std::uint64_t seed, int M = 4, int N = 8, int K = 3) {
  Scenario s;
  s.M = M;
  s.N = N;
  s.K = K;
  s.seed = seed;
  return s;
}

CMatrix diagonal_product(const ChannelSet& ch, const PhaseVector& theta) {
  const auto u = theta.phasors();
  return ch.H_R * CMatrix::diagonal(u) * ch.H_BR;
}

}  // namespace

TEST_CASE("unit conversions") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12));
  CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3));
}

TEST_CASE("path loss") {
  CHECK(beta_bs_ris_dB(5.0, 5.0, 50.0) == doctest::Approx(5.0 + 5.0 - 35.9 - 22.0 * std::log10(50.0)));
  CHECK(beta_bs_ris_dB(5.0, 5.0, 50.0) == doctest::Approx(-63.28).epsilon(1e-4));
  CHECK(beta_ris_user_dB(5.0, 10.0) == doctest::Approx(5.0 - 33.05 - 30.0));
  CHECK(beta_bs_eu_dB(5.0, 10.0) == doctest::Approx(5.0 - 30.0 - 20.0));
}

TEST_CASE("scenario validation") {
  Scenario s;
  CHECK_NOTHROW(s.validate());
  s.K_E = -1;
  CHECK_THROWS_AS(s.validate(), InvalidScenario);
  s = Scenario{};
  s.zeta = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidScenario);
  s = Scenario{};
  s.M = 0;
  CHECK_THROWS_AS(generate(s), InvalidScenario);
}

TEST_CASE("coincident nodes are rejected") {
  Scenario s = small(1);
  s.ris = s.bs;
  CHECK_THROWS_AS(generate(s), InvalidGeometry);
}

TEST_CASE("generate is deterministic") {
  const ChannelSet a = generate(small(42));
  const ChannelSet b = generate(small(42));
  CHECK(max_abs_diff(a.H_BR, b.H_BR) == 0.0);
  CHECK(max_abs_diff(a.H_R, b.H_R) == 0.0);
  CHECK(max_abs_diff(a.H_E, b.H_E) == 0.0);
  const ChannelSet c = generate(small(43));
  CHECK(max_abs_diff(a.H_R, c.H_R) > 0.0);
}

TEST_CASE("dimensions and the element decomposition") {
  const ChannelSet ch = generate(small(7, 4, 8, 3));
  CHECK(ch.H_BR.rows() == 8);
  CHECK(ch.H_BR.cols() == 4);
  CHECK(ch.H_R.rows() == 3);
  CHECK(ch.H_E.rows() == 3);
  CHECK(ch.H_n.size() == 8);
  CMatrix sum(3, 4);
  for (int n = 0; n < ch.N; ++n) {
    std::vector<cplx> e(8, 0.0);
    e[static_cast<std::size_t>(n)] = 1.0;
    CHECK(max_abs_diff(ch.H_n[static_cast<std::size_t>(n)], ch.H_R * CMatrix::diagonal(e) * ch.H_BR) < 1e-20);
    sum += ch.H_n[static_cast<std::size_t>(n)];
  }
  CHECK(max_abs_diff(compose(ch, PhaseVector::zeros(ch.N)), sum) < 1e-20);
}

TEST_CASE("compose") {
  const ChannelSet ch = generate(small(9));
  const double scale = compose(ch, PhaseVector::zeros(ch.N)).max_abs();
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PhaseVector th = random_phases(ch.N, s);
    const CMatrix h = compose(ch, th);
    CHECK(max_abs_diff(h, diagonal_product(ch, th)) <= 1e-12 * scale);
    std::vector<double> shifted = th.angles();
    shifted[s % shifted.size()] += 2.0 * std::numbers::pi;
    CHECK(max_abs_diff(compose(ch, PhaseVector(shifted)), h) <= 1e-12 * scale);
  }
  CHECK_THROWS_AS(compose(ch, PhaseVector::zeros(ch.N + 1)), DimensionMismatch);

  const ChannelSet one = generate(small(3, 2, 1, 1));
  const PhaseVector th(std::vector<double>{0.7});
  CHECK(max_abs_diff(compose(one, th), std::polar(1.0, 0.7) * one.H_n[0]) < 1e-20);
}

TEST_CASE("phase vectors wrap to [0, 2pi)") {
  const PhaseVector p(std::vector<double>{-0.5, 7.0, 2.0 * std::numbers::pi});
  CHECK(p[0] == doctest::Approx(2.0 * std::numbers::pi - 0.5));
  CHECK(p[1] == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK(p[2] == 0.0);
  const PhaseVector q(std::vector<double>{0.1, 0.0, 6.2});
  CHECK(p.max_angular_distance(q) == doctest::Approx(7.0 - 2.0 * std::numbers::pi));
  CHECK(wrap_angle_signed(2.0 * std::numbers::pi - 0.6) == doctest::Approx(-0.6));
}

TEST_CASE("correlation_root") {
  CHECK(max_abs_diff(correlation_root(0.3, 1.1, 1), CMatrix::identity(1)) < 1e-15);
  const CMatrix flat = correlation_root(0.0, 0.4, 5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(flat(i, j) - 1.0 / std::sqrt(5.0)) < 1e-15);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const double az = 2.0 * u(rng);
    const double el = u(rng);
    const int n = 1 + trial % 12;
    CMatrix r(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        r(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) =
            std::polar(1.0, std::numbers::pi * (a - b) * std::sin(az) * std::sin(el));
    const CMatrix root = correlation_root(az, el, n);
    CHECK(max_abs_diff(times_adjoint(root, root), r) <= 1e-9);
    CHECK(max_abs_diff(root, root.adjoint()) <= 1e-12);
  }
}

TEST_CASE("large K-factor leaves only the LoS component") {
  // Sample variance of the scattered residue over 1e4 energy-user draws.
  Scenario s = small(0, 2, 1, 1);
  s.K_E = 1;
  s.rician_K = 1e8;
  double var = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    s.seed = seed;
    const ChannelSet ch = generate(s);
    const double amp = std::sqrt(db_to_linear(ch.beta_E_dB[0]));
    for (std::size_t m = 0; m < 2; ++m) {
      var += std::norm(ch.H_E(0, m) / amp - ch.eu_los(0, m));
      ++count;
    }
  }
  var /= count;
  CHECK(var < 1e-6);

  s.rician_K = 3.0;
  double var3 = 0.0;
  count = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    s.seed = seed;
    const ChannelSet ch = generate(s);
    const double amp = std::sqrt(db_to_linear(ch.beta_E_dB[0]));
    for (std::size_t m = 0; m < 2; ++m) {
      var3 += std::norm(ch.H_E(0, m) / amp - std::sqrt(0.75) * ch.eu_los(0, m));
      ++count;
    }
  }
  CHECK(var3 / count == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("composite Gram has full rank") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ChannelSet ch = generate(small(seed, 4, 8, 4));
    CHECK_NOTHROW(zf_objective(ch, PhaseVector::zeros(ch.N)));
  }
}

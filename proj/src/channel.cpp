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

#include "risopt/channel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxRankRetries = 100;

cplx circular_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  const double re = g(rng);
  const double im = g(rng);
  return {re, im};
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Weights of the LoS and scattered parts for a Rician K-factor.
std::pair<double, double> rician_weights(double k_factor) {
  if (std::isinf(k_factor)) return {1.0, 0.0};
  return {std::sqrt(k_factor / (k_factor + 1.0)), std::sqrt(1.0 / (k_factor + 1.0))};
}

double checked_distance(const Vec3& a, const Vec3& b, const char* what) {
  const double d = distance(a, b);
  if (!(d > 0.0)) throw InvalidGeometry(std::string("zero distance for ") + what);
  return d;
}

bool well_conditioned(const ChannelSet& ch) {
  const HermitianMatrix gram = HermitianMatrix::gram(compose(ch, PhaseVector::zeros(ch.N)));
  try {
    const double tr_inv = trace_of_inverse(gram);
    // lambda_min >= 1/trace(G^-1) and lambda_max <= trace(G)
    return 1.0 / tr_inv >= 1e-12 * gram.trace();
  } catch (const NotPositiveDefinite&) {
    return false;
  }
}

ChannelSet draw(const Scenario& s, std::mt19937_64& rng) {
  ChannelSet ch;
  ch.M = s.M;
  ch.N = s.N;
  ch.K = s.K;
  ch.K_E = s.K_E;
  const auto M = static_cast<std::size_t>(s.M);
  const auto N = static_cast<std::size_t>(s.N);
  const auto K = static_cast<std::size_t>(s.K);
  const auto KE = static_cast<std::size_t>(s.K_E);
  const auto [w_los, w_nlos] = rician_weights(s.rician_K);

  // BS -> RIS line-of-sight matrix, one angle pair per RIS element.
  const double d_br = checked_distance(s.bs, s.ris, "BS-RIS");
  ch.beta_BR_dB = beta_bs_ris_dB(s.G_BS_dBi, s.G_RIS_dBi, d_br);
  const double amp_br = std::sqrt(db_to_linear(ch.beta_BR_dB));
  ch.H_BR = CMatrix(N, M);
  for (std::size_t n = 0; n < N; ++n) {
    const double th = uniform(rng, 0.0, kPi);
    const double ph = uniform(rng, 0.0, kTwoPi);
    const double s_n = std::sin(th) * std::sin(ph);
    const double s_bar = std::sin(kPi - th) * std::sin(kPi + ph);
    for (std::size_t m = 0; m < M; ++m) {
      const double arg = kPi * (static_cast<double>(n) * s_bar + static_cast<double>(m) * s_n);
      ch.H_BR(n, m) = amp_br * std::polar(1.0, arg);
    }
  }

  // RIS -> IU rows with spatial correlation.
  ch.H_R = CMatrix(K, N);
  ch.beta_R_dB.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    const Vec3 pos{uniform(rng, s.iu_x_min_m, s.iu_x_max_m), uniform(rng, s.iu_y_min_m, s.iu_y_max_m),
                   s.iu_z_m};
    ch.beta_R_dB[k] = beta_ris_user_dB(s.G_RIS_dBi, checked_distance(s.ris, pos, "RIS-IU"));
    const double azimuth = uniform(rng, 0.0, kTwoPi);
    const double elevation = uniform(rng, 0.0, kPi);
    const double w = std::sin(azimuth) * std::sin(elevation);
    const double amp = std::sqrt(db_to_linear(ch.beta_R_dB[k]));
    CMatrix h(1, N);
    for (std::size_t n = 0; n < N; ++n) {
      const cplx los = std::polar(1.0, -kPi * static_cast<double>(n) * w);
      h(0, n) = amp * (w_los * los + w_nlos * circular_gaussian(rng));
    }
    const CMatrix row = h * correlation_root(azimuth, elevation, s.N);
    for (std::size_t n = 0; n < N; ++n) ch.H_R(k, n) = row(0, n);
  }

  // BS -> EU rows; the RIS-reflected contribution is neglected for EUs.
  ch.H_E = CMatrix(KE, M);
  ch.eu_los = CMatrix(KE, M);
  ch.beta_E_dB.resize(KE);
  for (std::size_t l = 0; l < KE; ++l) {
    const double r = s.eu_radius_m * std::sqrt(uniform(rng, 0.0, 1.0));
    const double a = uniform(rng, 0.0, kTwoPi);
    const Vec3 pos{s.bs.x + r * std::cos(a), s.bs.y + r * std::sin(a), s.eu_z_m};
    ch.beta_E_dB[l] = beta_bs_eu_dB(s.G_BS_dBi, checked_distance(s.bs, pos, "BS-EU"));
    const double amp = std::sqrt(db_to_linear(ch.beta_E_dB[l]));
    const double bearing = std::atan2(pos.y - s.bs.y, pos.x - s.bs.x);
    for (std::size_t m = 0; m < M; ++m) {
      const cplx los = std::polar(1.0, kPi * static_cast<double>(m) * std::sin(bearing));
      ch.eu_los(l, m) = los;
      ch.H_E(l, m) = amp * (w_los * los + w_nlos * circular_gaussian(rng));
    }
  }

  ch.H_n.reserve(N);
  for (std::size_t n = 0; n < N; ++n) {
    CMatrix hn(K, M);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t m = 0; m < M; ++m) hn(k, m) = ch.H_R(k, n) * ch.H_BR(n, m);
    ch.H_n.push_back(std::move(hn));
  }
  return ch;
}

}  // namespace

double distance(const Vec3& a, const Vec3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double beta_bs_ris_dB(double g_bs_dbi, double g_ris_dbi, double d) {
  return g_bs_dbi + g_ris_dbi - 35.9 - 22.0 * std::log10(d);
}

double beta_ris_user_dB(double g_ris_dbi, double d) { return g_ris_dbi - 33.05 - 30.0 * std::log10(d); }

double beta_bs_eu_dB(double g_bs_dbi, double d) { return g_bs_dbi - 30.0 - 20.0 * std::log10(d); }

void Scenario::validate() const {
  auto fail = [](const std::string& m) { throw InvalidScenario(m); };
  if (M < 1) fail("M must be >= 1");
  if (N < 1) fail("N must be >= 1");
  if (K < 1) fail("K must be >= 1");
  if (K_E < 0) fail("K_E must be >= 0");
  if (!(zeta > 0.0 && zeta <= 1.0)) fail("zeta must lie in (0, 1]");
  if (!(alpha_rzf >= 0.0)) fail("alpha_rzf must be >= 0");
  if (!(rician_K >= 0.0)) fail("rician_K must be >= 0");
  for (double v : {P_dBm, sigma_dBm, e_min_dBm})
    if (!std::isfinite(v)) fail("power levels must be finite");
  if (!(iu_x_max_m >= iu_x_min_m && iu_y_max_m >= iu_y_min_m)) fail("empty IU region");
  if (!(eu_radius_m >= 0.0)) fail("eu_radius_m must be >= 0");
}

PhaseVector::PhaseVector(std::vector<double> theta) : theta_(std::move(theta)) {
  for (auto& t : theta_) {
    if (!std::isfinite(t)) throw DomainError("PhaseVector: non-finite angle");
    t = wrap_angle(t);
  }
}

PhaseVector PhaseVector::zeros(int n) { return PhaseVector(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }

PhaseVector PhaseVector::from_phasors(std::span<const cplx> u) {
  std::vector<double> t(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) t[i] = u[i] == cplx{} ? 0.0 : std::arg(u[i]);
  return PhaseVector(std::move(t));
}

std::vector<cplx> PhaseVector::phasors() const {
  std::vector<cplx> u(theta_.size());
  for (std::size_t i = 0; i < theta_.size(); ++i) u[i] = std::polar(1.0, theta_[i]);
  return u;
}

double PhaseVector::max_angular_distance(const PhaseVector& other) const {
  if (other.size() != size()) throw DimensionMismatch("PhaseVector: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < theta_.size(); ++i)
    m = std::max(m, std::abs(wrap_angle_signed(theta_[i] - other.theta_[i])));
  return m;
}

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double wrap_angle_signed(double a) {
  double r = wrap_angle(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

ChannelSet generate(const Scenario& scenario) {
  scenario.validate();
  std::mt19937_64 rng(scenario.seed);
  ChannelSet ch = draw(scenario, rng);
  if (scenario.K <= scenario.M) {
    int tries = 1;
    while (!well_conditioned(ch)) {
      if (tries >= kMaxRankRetries) throw RankDeficient("generate: composite channel stays rank deficient");
      ch = draw(scenario, rng);
      ++tries;
    }
    ch.draws = tries;
  }
  return ch;
}

CMatrix compose(const ChannelSet& channels, const PhaseVector& theta) {
  if (theta.size() != channels.N) throw DimensionMismatch("compose: theta length != N");
  CMatrix h(static_cast<std::size_t>(channels.K), static_cast<std::size_t>(channels.M));
  auto out = h.data();
  for (int n = 0; n < channels.N; ++n) {
    const cplx u = std::polar(1.0, theta[n]);
    const auto hn = channels.H_n[static_cast<std::size_t>(n)].data();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += u * hn[i];
  }
  return h;
}

CMatrix correlation_root(double azimuth, double elevation, int n) {
  if (n < 1) throw DimensionMismatch("correlation_root: N must be >= 1");
  // R = v v^H with v_i = exp(j pi i w) has rank one and R^2 = N R, so the
  // principal root is R / sqrt(N).
  const double w = std::sin(azimuth) * std::sin(elevation);
  const auto nn = static_cast<std::size_t>(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  CMatrix root(nn, nn);
  for (std::size_t i = 0; i < nn; ++i)
    for (std::size_t j = 0; j < nn; ++j)
      root(i, j) = scale * std::polar(1.0, kPi * (static_cast<double>(i) - static_cast<double>(j)) * w);
  return root;
}

}  // namespace risopt

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

// Sampling checks of every minorant/majorant constructor, shared by the
// unit tests and the acceptance run.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "risopt/minorants.hpp"

namespace risopt::testing {

struct SuiteRow {
  std::string name;
  double max_violation = 0.0;  // bound on the wrong side of the true value
  double max_tangency = 0.0;   // |surrogate - true| at the anchor
  double min_eigenvalue = 0.0; // of the stored quadratic coefficient
  long samples = 0;
};

inline double min_eig(const Eigen::MatrixXd& q) {
  if (q.size() == 0) return 0.0;
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(0.5 * (q + q.transpose())).eigenvalues().minCoeff();
}

inline HermitianMatrix random_pd2(std::mt19937_64& rng) {
  return HermitianMatrix::gram(random_matrix(2, 2, rng, 0.7)).shifted(0.2);
}

inline std::vector<SuiteRow> run_minorant_suite(int anchors, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  std::uniform_real_distribution<double> sym(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SuiteRow> rows;
  auto row = [&rows](const std::string& name) -> SuiteRow& {
    rows.push_back({name});
    return rows.back();
  };
  auto worse = [](double& slot, double v) { slot = std::max(slot, v); };

  {
    SuiteRow& r = row("fund1_bound");
    for (int a = 0; a < anchors; ++a) {
      const CMatrix vb = random_matrix(2, 3, rng);
      const HermitianMatrix yb = random_pd2(rng);
      worse(r.max_tangency, std::abs(fund1_bound(vb, yb, vb, yb) - quadratic_over_matrix(vb, yb)));
      for (int s = 0; s < samples; ++s) {
        const CMatrix v = random_matrix(2, 3, rng);
        const HermitianMatrix y = random_pd2(rng);
        worse(r.max_violation, fund1_bound(v, y, vb, yb) - quadratic_over_matrix(v, y));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("fund4_rate_minorant");
    r.min_eigenvalue = 1.0;
    for (int a = 0; a < anchors; ++a) {
      const double vb = pos(rng);
      const double yb = pos(rng);
      const QuadraticSurrogate q = fund4_rate_minorant(vb, yb);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      worse(r.max_tangency, std::abs(q.evaluate(std::vector<double>{vb, yb}) - std::log1p(vb * vb / yb)));
      for (int s = 0; s < samples; ++s) {
        const double v = 3.0 * sym(rng);
        const double y = pos(rng);
        worse(r.max_violation, q.evaluate(std::vector<double>{v, y}) - std::log1p(v * v / y));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("fund5_logdet_minorant");
    for (int a = 0; a < anchors; ++a) {
      const CMatrix vb = random_matrix(2, 2, rng);
      const HermitianMatrix yb = random_pd2(rng);
      worse(r.max_tangency, std::abs(fund5_logdet_minorant(vb, yb, vb, yb) - logdet_rate(vb, yb)));
      for (int s = 0; s < samples; ++s) {
        const CMatrix v = random_matrix(2, 2, rng);
        const HermitianMatrix y = random_pd2(rng);
        worse(r.max_violation, fund5_logdet_minorant(v, y, vb, yb) - logdet_rate(v, y));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("pi_E_majorant");
    r.min_eigenvalue = 1.0;
    for (int a = 0; a < anchors; ++a) {
      const auto norms = uniform_vector(3, 0.1, 5.0, rng);
      const auto xb = uniform_vector(3, 0.0, 2.0, rng);
      const QuadraticSurrogate q = pi_E_majorant(norms, xb);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      auto pi = [&](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t l = 0; l < x.size(); ++l) s += norms[l] * x[l];
        return s;
      };
      worse(r.max_tangency, std::abs(q.evaluate(xb) - pi(xb)));
      for (int s = 0; s < samples; ++s) {
        const auto x = uniform_vector(3, 0.0, 4.0, rng);
        worse(r.max_violation, pi(x) - q.evaluate(x));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("bilinear_majorant");
    r.min_eigenvalue = 1.0;
    for (int a = 0; a < anchors; ++a) {
      const double gb = pos(rng);
      const double tb = pos(rng);
      const QuadraticSurrogate q = bilinear_majorant(gb, tb);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      worse(r.max_tangency, std::abs(q.evaluate(std::vector<double>{gb, tb}) - gb * tb));
      for (int s = 0; s < samples; ++s) {
        const double g = pos(rng);
        const double t = pos(rng);
        worse(r.max_violation, g * t - q.evaluate(std::vector<double>{g, t}));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("r0_minorant");
    r.min_eigenvalue = 1.0;
    for (int a = 0; a < anchors; ++a) {
      const double pb = pos(rng);
      const double sigma = pos(rng);
      const QuadraticSurrogate q = r0_minorant(pb, sigma);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      worse(r.max_tangency, std::abs(q.evaluate(std::vector<double>{pb}) - std::log1p(pb * pb / sigma)));
      for (int s = 0; s < samples; ++s) {
        const double p = 4.0 * sym(rng);
        worse(r.max_violation, q.evaluate(std::vector<double>{p}) - std::log1p(p * p / sigma));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("rk_minorant");
    r.min_eigenvalue = 1.0;
    constexpr int K = 4;
    for (int a = 0; a < anchors; ++a) {
      Eigen::MatrixXd gains(K, K);
      for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) gains(i, j) = i == j ? pos(rng) : 0.5 * unit(rng);
      const double sigma = 0.1 + unit(rng);
      const int k = a % K;
      const auto pb = uniform_vector(K, 0.1, 3.0, rng);
      const QuadraticSurrogate q = rk_minorant(pb, k, gains, sigma);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      worse(r.max_tangency, std::abs(q.evaluate(pb) - interference_rate(pb, k, gains, sigma)));
      for (int s = 0; s < samples; ++s) {
        const auto p = uniform_vector(K, -4.0, 4.0, rng);
        worse(r.max_violation, q.evaluate(p) - interference_rate(p, k, gains, sigma));
        ++r.samples;
      }
    }
  }
  {
    SuiteRow& r = row("rho_minorant");
    r.min_eigenvalue = 1.0;
    constexpr int K = 3;
    for (int a = 0; a < anchors; ++a) {
      CMatrix h = random_matrix(K, K, rng, 0.5);
      for (std::size_t j = 0; j < K; ++j) h(j, j) = std::polar(1.0 + unit(rng), 6.3 * unit(rng));
      const double sigma = 0.1 + unit(rng);
      const int k = a % K;
      const auto zb = uniform_vector(4 * K, -1.5, 1.5, rng);
      const QuadraticSurrogate q = rho_minorant(zb, k, h, sigma);
      r.min_eigenvalue = std::min(r.min_eigenvalue, min_eig(q.quadratic));
      worse(r.max_tangency, std::abs(q.evaluate(zb) - improper_rho(zb, k, h, sigma)));
      for (int s = 0; s < samples; ++s) {
        const auto z = uniform_vector(4 * K, -3.0, 3.0, rng);
        worse(r.max_violation, q.evaluate(z) - improper_rho(z, k, h, sigma));
        ++r.samples;
      }
    }
  }
  return rows;
}

}  // namespace risopt::testing

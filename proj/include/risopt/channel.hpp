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
#include <numbers>
#include <span>
#include <vector>

#include "risopt/cxmat.hpp"

namespace risopt {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);
double dbm_to_watts(double dbm);
double db_to_linear(double db);

/// Experiment configuration: geometry, dimensions and power/noise levels.
struct Scenario {
  int M = 16;   // BS antennas
  int N = 100;  // RIS elements
  int K = 10;   // information users
  int K_E = 3;  // energy users
  double P_dBm = 25.0;
  double sigma_dBm = -90.0;
  double e_min_dBm = -20.0;
  double zeta = 0.5;
  double alpha_rzf = 0.0;  // 0 selects the Gram-scaled default
  double rician_K = 3.0;
  double G_BS_dBi = 5.0;
  double G_RIS_dBi = 5.0;
  Vec3 bs{20.0, 0.0, 10.0};
  Vec3 ris{0.0, 30.0, 40.0};
  // Information users are dropped uniformly in this rectangle at height iu_z_m.
  double iu_x_min_m = -30.0;
  double iu_x_max_m = 30.0;
  double iu_y_min_m = 30.0;
  double iu_y_max_m = 90.0;
  double iu_z_m = 1.5;
  // Energy users are dropped uniformly in a disc around the BS.
  double eu_radius_m = 10.0;
  double eu_z_m = 1.5;
  std::uint64_t seed = 1;

  double P() const { return dbm_to_watts(P_dBm); }
  double sigma() const { return dbm_to_watts(sigma_dBm); }
  double e_min() const { return dbm_to_watts(e_min_dBm); }

  /// Throws InvalidScenario on out-of-range dimensions or parameters.
  void validate() const;
};

/// Large-scale gains in dB.
double beta_bs_ris_dB(double g_bs_dbi, double g_ris_dbi, double d);
double beta_ris_user_dB(double g_ris_dbi, double d);
double beta_bs_eu_dB(double g_bs_dbi, double d);

/// One random problem instance.
struct ChannelSet {
  int M = 0;
  int N = 0;
  int K = 0;
  int K_E = 0;
  CMatrix H_BR;                // N x M, path loss applied
  CMatrix H_R;                 // K x N, row k = h~_{R-k} R_{RIS-k}^{1/2}
  CMatrix H_E;                 // K_E x M, row l = BS -> EU l
  std::vector<CMatrix> H_n;    // N matrices of size K x M: H_R Psi_n H_BR
  double beta_BR_dB = 0.0;
  std::vector<double> beta_R_dB;
  std::vector<double> beta_E_dB;
  CMatrix eu_los;              // K_E x M unit-modulus LoS components
  int draws = 1;               // small-scale draws used (rank retries)

  CMatrix h_R(int k) const { return H_R.row_block(static_cast<std::size_t>(k)); }
  CMatrix h_E(int l) const { return H_E.row_block(static_cast<std::size_t>(l)); }
};

/// RIS phase configuration; angles are stored reduced to [0, 2*pi).
class PhaseVector {
 public:
  PhaseVector() = default;
  explicit PhaseVector(std::vector<double> theta);
  static PhaseVector zeros(int n);
  static PhaseVector from_phasors(std::span<const cplx> u);

  int size() const { return static_cast<int>(theta_.size()); }
  double operator[](int n) const { return theta_[static_cast<std::size_t>(n)]; }
  const std::vector<double>& angles() const { return theta_; }
  std::vector<cplx> phasors() const;

  /// Largest angular distance to `other`, measured on the circle.
  double max_angular_distance(const PhaseVector& other) const;

 private:
  std::vector<double> theta_;
};

double wrap_angle(double a);        // -> [0, 2*pi)
double wrap_angle_signed(double a); // -> (-pi, pi]

ChannelSet generate(const Scenario& scenario);

/// H(e^{j theta}) = sum_n e^{j theta_n} H_n  (K x M).
CMatrix compose(const ChannelSet& channels, const PhaseVector& theta);

/// Principal square root of the RIS spatial correlation matrix
/// [R]_{n,n'} = exp(j pi (n - n') sin(azimuth) sin(elevation)).
CMatrix correlation_root(double azimuth, double elevation, int n);

}  // namespace risopt

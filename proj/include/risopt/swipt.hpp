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
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "risopt/channel.hpp"
#include "risopt/minorants.hpp"

namespace risopt {

// Energy side ------------------------------------------------------------

struct EnergyModel {
  Eigen::MatrixXd gram;   // |<h_l, h_l'>|^2
  Eigen::VectorXd norms;  // ||h_l||^2
  double zeta = 0.5;
  double e_min = 0.0;

  static EnergyModel from_channels(const ChannelSet& channels, double zeta, double e_min);
  int size() const { return static_cast<int>(norms.size()); }
};

/// pi_E(x) = sum_l ||h_l||^2 x_l.
double energy_tx_power(const EnergyModel& e, std::span<const double> x);
/// pi_l(x) = sum_l' |<h_l, h_l'>|^2 x_l' / t1.
double harvested(const EnergyModel& e, std::span<const double> x, int ell, double t1);

// Information side -------------------------------------------------------

double zf_info_power(double p0, double a_zf);

struct RzfEffective {
  CMatrix hbar;                     // h_kj = h_k Hrz h_j^H
  std::vector<double> beam_power;   // ||Hrz h_j^H||^2
};

/// Hrz = (H^H H + alpha I_M)^{-1} at theta_opt.
RzfEffective rzf_effective_channels(const ChannelSet& channels, const PhaseVector& theta_opt, double alpha);

/// ln(1 + |h_kk|^2 p_k^2 / (sum_{j!=k} |h_kj|^2 p_j^2 + sigma)).
double rate_rzf(std::span<const double> p, int k, const RzfEffective& eff, double sigma);
/// Half of the augmented log-det rate; p stacked as in ImproperCoeffs.
double rate_igs(std::span<const double> p_stacked, int k, const RzfEffective& eff, double sigma);
double igs_info_power(std::span<const double> p_stacked, std::span<const double> beam_power);

/// Information model in normalized variables z: the transmit power is
/// P * sum_i weight_i z_i^2 and every rate sees unit noise.
class InfoModel {
 public:
  virtual ~InfoModel() = default;
  virtual std::size_t dim() const = 0;
  virtual int num_users() const = 0;
  virtual const Eigen::VectorXd& power_weights() const = 0;
  /// Throughput of user k in nats.
  virtual double rate(std::span<const double> z, int k) const = 0;
  /// Concave minorant of rate(., k), tangent at the anchor.
  virtual QuadraticSurrogate rate_minorant(std::span<const double> anchor, int k) const = 0;
  /// Physical coefficients (p0; p_j; or stacked p1/p2 pairs).
  virtual std::vector<double> physical(std::span<const double> z) const = 0;
  /// Spreads the normalized power budget over the streams.
  virtual std::vector<double> initial(double budget, std::uint64_t seed) const = 0;
  virtual std::string name() const = 0;

  double power_fraction(std::span<const double> z) const;
  double min_rate(std::span<const double> z) const;
};

std::unique_ptr<InfoModel> make_zf_model(const ChannelSet& channels, const PhaseVector& theta_opt, double P,
                                         double sigma);
std::unique_ptr<InfoModel> make_pgs_model(const RzfEffective& eff, int num_users, double P, double sigma);
/// improper_share: fraction of each stream's initial power put on p2 (negative draws it at random).
std::unique_ptr<InfoModel> make_igs_model(const RzfEffective& eff, int num_users, double P, double sigma,
                                          double improper_share = -1.0);

// Path following ----------------------------------------------------------

struct AllocationState {
  std::vector<double> z;  // normalized information variables
  std::vector<double> x;  // energy powers (W per unit-norm beam)
  double t1 = 2.0;
  double t2 = 2.0;
  double gamma = 0.0;
};

struct SwiptOptions {
  int max_iter = 100;
  double tol = 1e-3;
  int init_attempts = 50;
  std::uint64_t seed = 1;
};

struct PathFollowResult {
  AllocationState state;
  std::vector<double> gamma_trace;  // entry 0 is the initial point
  int iterations = 0;
  bool converged = false;
  std::string status = "ok";
};

struct SwiptProblem {
  const InfoModel* info = nullptr;
  EnergyModel energy;
  double P = 1.0;
};

/// Largest violation of the original transmit-TS constraints (relative for
/// power and energy rows, absolute nats for the rate rows).
double max_violation(const SwiptProblem& problem, const AllocationState& s);

/// Strictly feasible start built on the cheapest energy allocation, with 90%
/// of the remaining budget on information. Throws InfeasibleStart when the
/// energy thresholds cannot be met within the budget.
AllocationState initial_point(const SwiptProblem& problem, const SwiptOptions& options = {});

/// Transmit time-switching max-min throughput by successive convex approximation.
PathFollowResult path_follow(const SwiptProblem& problem, const SwiptOptions& options = {});
/// Same with a caller-provided feasible start.
PathFollowResult path_follow(const SwiptProblem& problem, const AllocationState& start,
                             const SwiptOptions& options = {});

/// Full-slot information delivery: max min rate s.t. power <= P.
PathFollowResult info_only(const InfoModel& info, const SwiptOptions& options = {});
PathFollowResult info_only(const InfoModel& info, const std::vector<double>& start,
                           const SwiptOptions& options = {});

enum class Signaling { Proper, Improper };

SwiptProblem make_problem(const Scenario& scenario, const ChannelSet& channels, const InfoModel& info);

PathFollowResult path_follow_zf(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                const SwiptOptions& options = {});
PathFollowResult path_follow_rzf(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                 double alpha, const SwiptOptions& options = {});
PathFollowResult path_follow_igs(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                 double alpha, const SwiptOptions& options = {});
PathFollowResult info_only(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                           double alpha, Signaling mode, const SwiptOptions& options = {});

}  // namespace risopt

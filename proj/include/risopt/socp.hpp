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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace risopt {

/// a^T z <= b
struct LinearConstraint {
  Eigen::VectorXd a;
  double b = 0.0;
};

/// ||F z||^2 + q^T z <= b; F^T F is the PSD certificate of the quadratic part.
struct QuadraticConstraint {
  Eigen::MatrixXd F;
  Eigen::VectorXd q;
  double b = 0.0;
};

/// ||F z + g||^2 <= (alpha^T z + alpha0)(beta^T z + beta0) with both factors positive.
struct QuadOverLinConstraint {
  Eigen::MatrixXd F;
  Eigen::VectorXd g;
  Eigen::VectorXd alpha;
  double alpha0 = 0.0;
  Eigen::VectorXd beta;
  double beta0 = 0.0;
};

/// Maximize c^T z over an intersection of convex constraints.
class ConicProblem {
 public:
  explicit ConicProblem(std::size_t num_vars = 0);

  std::size_t num_vars() const { return n_; }
  const Eigen::VectorXd& objective() const { return c_; }
  void set_objective(Eigen::VectorXd c);
  void set_objective_coefficient(std::size_t i, double v);

  void add_linear(Eigen::VectorXd a, double b);
  /// ||F z||^2 + q^T z <= b
  void add_quadratic(Eigen::MatrixXd F, Eigen::VectorXd q, double b);
  /// z^T Q z + q^T z <= b with Q PSD; factorizes Q.
  void add_quadratic_psd(const Eigen::MatrixXd& Q, Eigen::VectorXd q, double b);
  /// ||F z + g||^2 <= z_s z_t, z_s > 0.
  void add_quad_over_lin(Eigen::MatrixXd F, Eigen::VectorXd g, std::size_t s, std::size_t t);
  void add_quad_over_lin(QuadOverLinConstraint c);
  /// lower <= z_i <= upper; infinite sides are ignored.
  void add_bound(std::size_t i, double lower, double upper);

  const std::vector<LinearConstraint>& linear() const { return linear_; }
  const std::vector<QuadraticConstraint>& quadratic() const { return quadratic_; }
  const std::vector<QuadOverLinConstraint>& quad_over_lin() const { return qol_; }

  /// Largest constraint violation at z (0 when feasible).
  double max_violation(const Eigen::VectorXd& z) const;
  /// Smallest slack at z; positive iff z is strictly feasible.
  double min_slack(const Eigen::VectorXd& z) const;

 private:
  std::size_t n_ = 0;
  Eigen::VectorXd c_;
  std::vector<LinearConstraint> linear_;
  std::vector<QuadraticConstraint> quadratic_;
  std::vector<QuadOverLinConstraint> qol_;
};

enum class SolveStatus { Optimal, Infeasible, IterLimit };

const char* to_string(SolveStatus s);

struct SolveOptions {
  double t0 = 1.0;
  double t_factor = 10.0;
  double gap_tol = 1e-8;
  int max_newton = 200;  // per centering step
  double armijo = 0.3;
  double backtrack = 0.5;
};

struct SolveResult {
  Eigen::VectorXd z_opt;
  double objective_value = 0.0;
  double kkt_residual = 0.0;
  double duality_gap = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> path;  // objective after each centering step
  int newton_steps = 0;
};

/// Strictly feasible point with margin >= 1e-9, or nullopt when none exists.
std::optional<Eigen::VectorXd> phase_one(const ConicProblem& problem, const SolveOptions& options = {},
                                         const std::optional<Eigen::VectorXd>& guess = std::nullopt);

/// Log-barrier interior-point solve. A start with slack above 1e-9 skips phase one.
SolveResult solve(const ConicProblem& problem, const std::optional<Eigen::VectorXd>& start = std::nullopt,
                  const SolveOptions& options = {});

/// Plain-text dump, one constraint per line.
std::string dump(const ConicProblem& problem);

}  // namespace risopt

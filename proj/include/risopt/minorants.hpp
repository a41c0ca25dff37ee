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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "risopt/cxmat.hpp"

namespace risopt {

/// constant + linear^T z -/+ z^T quadratic z over a real decision vector.
struct QuadraticSurrogate {
  enum class Curvature { Concave, Convex };

  double constant = 0.0;
  Eigen::VectorXd linear;
  Eigen::MatrixXd quadratic;  // PSD
  Curvature curvature = Curvature::Concave;

  std::size_t dim() const { return static_cast<std::size_t>(linear.size()); }
  double evaluate(const Eigen::VectorXd& z) const;
  double evaluate(std::span<const double> z) const;
};

// Appendix inequalities -------------------------------------------------

/// <[V]^2 Y^{-1}> = trace(V V^H Y^{-1}).
double quadratic_over_matrix(const CMatrix& v, const HermitianMatrix& y);

/// Linear lower bound of the jointly convex map (V, Y) -> <[V]^2 Y^{-1}>.
double fund1_bound(const CMatrix& v, const HermitianMatrix& y, const CMatrix& anchor_v,
                   const HermitianMatrix& anchor_y);

/// Concave quadratic minorant of ln(1 + v^2/y) over z = (v, y).
QuadraticSurrogate fund4_rate_minorant(double anchor_v, double anchor_y);

/// ln|I + [V]^2 Y^{-1}|.
double logdet_rate(const CMatrix& v, const HermitianMatrix& y);

/// Minorant of ln|I + [V]^2 Y^{-1}| evaluated at (V, Y), tangent at the anchor.
double fund5_logdet_minorant(const CMatrix& v, const HermitianMatrix& y, const CMatrix& anchor_v,
                             const HermitianMatrix& anchor_y);

// Bound constructors ----------------------------------------------------

/// Convex majorant (pi^2/pi_bar + pi_bar)/2 of pi(x) = norms^T x.
QuadraticSurrogate pi_E_majorant(std::span<const double> norms, std::span<const double> anchor_x);

/// Convex majorant of gamma*t2 over z = (gamma, t2).
QuadraticSurrogate bilinear_majorant(double anchor_gamma, double anchor_t2);

/// Minorant of ln(1 + p0^2/sigma) over z = (p0).
QuadraticSurrogate r0_minorant(double anchor_p0, double sigma);

/// ln(1 + g_kk p_k^2 / (sum_{j!=k} g_kj p_j^2 + sigma)); gains(k, j) = |h_kj|^2.
double interference_rate(std::span<const double> p, int k, const Eigen::MatrixXd& gains,
                         double sigma);

/// Minorant of interference_rate over z = p.
QuadraticSurrogate rk_minorant(std::span<const double> anchor_p, int k, const Eigen::MatrixXd& gains,
                               double sigma);

/// Stacked real layout of the improper coefficients: for stream j the entries
/// 4j..4j+3 hold Re p1, Im p1, Re p2, Im p2.
struct ImproperCoeffs {
  std::vector<cplx> p1;
  std::vector<cplx> p2;

  static ImproperCoeffs from_stacked(std::span<const double> z);
  std::vector<double> stacked() const;
  std::size_t size() const { return p1.size(); }
};

/// rho_k = ln|I_2 + [X_kk]^2 (sum_{j!=k} [X_kj]^2 + sigma I_2)^{-1}| with
/// X_kj = diag(h_kj, conj h_kj) V(p_j).
double improper_rho(std::span<const double> z, int k, const CMatrix& h, double sigma);

/// Minorant of improper_rho over the stacked 4K real variables.
QuadraticSurrogate rho_minorant(std::span<const double> anchor_z, int k, const CMatrix& h,
                                double sigma);

/// X_kj = diag(h, conj h) V(p1, p2).
CMatrix improper_block(cplx h, cplx p1, cplx p2);

}  // namespace risopt

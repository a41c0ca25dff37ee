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

#include "risopt/minorants.hpp"

#include <array>
#include <cmath>
#include <string>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

QuadraticSurrogate make_surrogate(std::size_t n, QuadraticSurrogate::Curvature c) {
  QuadraticSurrogate s;
  s.linear = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  s.quadratic = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  s.curvature = c;
  return s;
}

// Basis images X(e_a) of the real-linear map (Re p1, Im p1, Re p2, Im p2) -> X.
std::array<CMatrix, 4> improper_basis(cplx h) {
  const cplx j{0.0, 1.0};
  return {improper_block(h, 1.0, 0.0), improper_block(h, j, 0.0), improper_block(h, 0.0, 1.0),
          improper_block(h, 0.0, j)};
}

HermitianMatrix interference_cov(const ImproperCoeffs& p, int k, const CMatrix& h, double sigma) {
  CMatrix b = CMatrix::identity(2) * cplx{sigma};
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (static_cast<int>(j) == k) continue;
    const CMatrix x = improper_block(h(static_cast<std::size_t>(k), j), p.p1[j], p.p2[j]);
    b += times_adjoint(x, x);
  }
  return HermitianMatrix(b);
}

}  // namespace

double QuadraticSurrogate::evaluate(const Eigen::VectorXd& z) const {
  if (z.size() != linear.size()) throw DimensionMismatch("QuadraticSurrogate: dimension mismatch");
  const double q = z.dot(quadratic * z);
  return constant + linear.dot(z) + (curvature == Curvature::Concave ? -q : q);
}

double QuadraticSurrogate::evaluate(std::span<const double> z) const {
  return evaluate(Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size())));
}

double quadratic_over_matrix(const CMatrix& v, const HermitianMatrix& y) {
  if (v.rows() != y.dim()) throw DimensionMismatch("quadratic_over_matrix: rows(V) != dim(Y)");
  return inner(v, hermitian_solve(y, v)).real();
}

double fund1_bound(const CMatrix& v, const HermitianMatrix& y, const CMatrix& anchor_v,
                   const HermitianMatrix& anchor_y) {
  const CMatrix w = hermitian_solve(anchor_y, anchor_v);  // Ybar^{-1} Vbar
  // 2 Re<Vbar^H Ybar^{-1} V> - <W W^H, Y>
  return 2.0 * inner(w, v).real() - inner(times_adjoint(w, w), y.matrix()).real();
}

QuadraticSurrogate fund4_rate_minorant(double anchor_v, double anchor_y) {
  if (!(anchor_y > 0.0)) throw DomainError("fund4_rate_minorant: anchor y must be positive");
  const double v2 = anchor_v * anchor_v;
  const double c = v2 / (anchor_y * (anchor_y + v2));
  auto s = make_surrogate(2, QuadraticSurrogate::Curvature::Concave);
  s.constant = std::log1p(v2 / anchor_y) - v2 / anchor_y;
  s.linear << 2.0 * anchor_v / anchor_y, -c;
  s.quadratic(0, 0) = c;
  return s;
}

double logdet_rate(const CMatrix& v, const HermitianMatrix& y) {
  return logdet(y + HermitianMatrix::gram(v)) - logdet(y);
}

double fund5_logdet_minorant(const CMatrix& v, const HermitianMatrix& y, const CMatrix& anchor_v,
                             const HermitianMatrix& anchor_y) {
  const HermitianMatrix ybar_inv = hermitian_inverse(anchor_y);
  const HermitianMatrix vv_bar = HermitianMatrix::gram(anchor_v);
  const HermitianMatrix total_inv = hermitian_inverse(anchor_y + vv_bar);
  const CMatrix c = ybar_inv.matrix() - total_inv.matrix();
  const CMatrix vv = HermitianMatrix::gram(v).matrix();
  return logdet_rate(anchor_v, anchor_y) - inner(vv_bar.matrix(), ybar_inv.matrix()).real() -
         inner(c, vv + y.matrix()).real() + 2.0 * inner(ybar_inv.matrix() * anchor_v, v).real();
}

QuadraticSurrogate pi_E_majorant(std::span<const double> norms, std::span<const double> anchor_x) {
  if (norms.size() != anchor_x.size()) throw DimensionMismatch("pi_E_majorant: size mismatch");
  double pi_bar = 0.0;
  for (std::size_t l = 0; l < norms.size(); ++l) pi_bar += norms[l] * anchor_x[l];
  if (!(pi_bar > 0.0)) throw DegenerateAnchor("pi_E_majorant: anchor energy power is zero");
  auto s = make_surrogate(norms.size(), QuadraticSurrogate::Curvature::Convex);
  const Eigen::Map<const Eigen::VectorXd> n(norms.data(), static_cast<Eigen::Index>(norms.size()));
  s.constant = 0.5 * pi_bar;
  s.quadratic = n * n.transpose() / (2.0 * pi_bar);
  return s;
}

QuadraticSurrogate bilinear_majorant(double anchor_gamma, double anchor_t2) {
  require_positive(anchor_gamma, "bilinear_majorant: anchor gamma");
  require_positive(anchor_t2, "bilinear_majorant: anchor t2");
  // (g t / 4)(gamma/g + t2/t)^2 = (a gamma + b t2)^2 / 4
  const double a = std::sqrt(anchor_t2 / anchor_gamma);
  const double b = std::sqrt(anchor_gamma / anchor_t2);
  auto s = make_surrogate(2, QuadraticSurrogate::Curvature::Convex);
  s.quadratic << a * a / 4.0, a * b / 4.0, a * b / 4.0, b * b / 4.0;
  return s;
}

QuadraticSurrogate r0_minorant(double anchor_p0, double sigma) {
  require_positive(sigma, "r0_minorant: sigma");
  const auto full = fund4_rate_minorant(anchor_p0, sigma);
  auto s = make_surrogate(1, QuadraticSurrogate::Curvature::Concave);
  s.constant = full.constant + full.linear(1) * sigma;
  s.linear(0) = full.linear(0);
  s.quadratic(0, 0) = full.quadratic(0, 0);
  return s;
}

double interference_rate(std::span<const double> p, int k, const Eigen::MatrixXd& gains,
                         double sigma) {
  const auto kk = static_cast<Eigen::Index>(k);
  double y = sigma;
  for (Eigen::Index j = 0; j < gains.cols(); ++j)
    if (j != kk) y += gains(kk, j) * p[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
  const double pk = p[static_cast<std::size_t>(k)];
  return std::log1p(gains(kk, kk) * pk * pk / y);
}

QuadraticSurrogate rk_minorant(std::span<const double> anchor_p, int k, const Eigen::MatrixXd& gains,
                               double sigma) {
  require_positive(sigma, "rk_minorant: sigma");
  const auto n = anchor_p.size();
  if (gains.rows() != static_cast<Eigen::Index>(n) || gains.cols() != static_cast<Eigen::Index>(n))
    throw DimensionMismatch("rk_minorant: gains must be K x K");
  const auto kk = static_cast<Eigen::Index>(k);
  double y = sigma;
  for (std::size_t j = 0; j < n; ++j)
    if (static_cast<int>(j) != k) y += gains(kk, static_cast<Eigen::Index>(j)) * anchor_p[j] * anchor_p[j];
  const double pk = anchor_p[static_cast<std::size_t>(k)];
  const double v2 = gains(kk, kk) * pk * pk;
  const double c = 1.0 / y - 1.0 / (y + v2);
  auto s = make_surrogate(n, QuadraticSurrogate::Curvature::Concave);
  s.constant = std::log1p(v2 / y) - v2 / y - sigma * c;
  s.linear(kk) = 2.0 * gains(kk, kk) * pk / y;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    s.quadratic(jj, jj) = c * gains(kk, jj);
  }
  return s;
}

ImproperCoeffs ImproperCoeffs::from_stacked(std::span<const double> z) {
  if (z.size() % 4 != 0) throw DimensionMismatch("ImproperCoeffs: length not a multiple of 4");
  ImproperCoeffs p;
  for (std::size_t j = 0; j < z.size() / 4; ++j) {
    p.p1.emplace_back(z[4 * j], z[4 * j + 1]);
    p.p2.emplace_back(z[4 * j + 2], z[4 * j + 3]);
  }
  return p;
}

std::vector<double> ImproperCoeffs::stacked() const {
  std::vector<double> z;
  z.reserve(4 * p1.size());
  for (std::size_t j = 0; j < p1.size(); ++j) {
    z.insert(z.end(), {p1[j].real(), p1[j].imag(), p2[j].real(), p2[j].imag()});
  }
  return z;
}

CMatrix improper_block(cplx h, cplx p1, cplx p2) {
  return CMatrix{{h * p1, h * p2}, {std::conj(h * p2), std::conj(h * p1)}};
}

double improper_rho(std::span<const double> z, int k, const CMatrix& h, double sigma) {
  require_positive(sigma, "improper_rho: sigma");
  const auto p = ImproperCoeffs::from_stacked(z);
  if (h.rows() != p.size() || h.cols() != p.size()) throw DimensionMismatch("improper_rho: h must be K x K");
  const auto kk = static_cast<std::size_t>(k);
  return logdet_rate(improper_block(h(kk, kk), p.p1[kk], p.p2[kk]), interference_cov(p, k, h, sigma));
}

QuadraticSurrogate rho_minorant(std::span<const double> anchor_z, int k, const CMatrix& h,
                                double sigma) {
  require_positive(sigma, "rho_minorant: sigma");
  const auto p = ImproperCoeffs::from_stacked(anchor_z);
  const std::size_t n = p.size();
  if (h.rows() != n || h.cols() != n) throw DimensionMismatch("rho_minorant: h must be K x K");
  const auto kk = static_cast<std::size_t>(k);

  const HermitianMatrix b = interference_cov(p, k, h, sigma);
  const CMatrix x_kk = improper_block(h(kk, kk), p.p1[kk], p.p2[kk]);
  const HermitianMatrix b_inv = hermitian_inverse(b);
  const HermitianMatrix xx = HermitianMatrix::gram(x_kk);
  const CMatrix c = b_inv.matrix() - hermitian_inverse(b + xx).matrix();

  auto s = make_surrogate(4 * n, QuadraticSurrogate::Curvature::Concave);
  s.constant = logdet_rate(x_kk, b) - inner(xx.matrix(), b_inv.matrix()).real() - sigma * c.trace().real();

  const CMatrix w = b_inv.matrix() * x_kk;  // B^{-1} X_kk
  const auto own = improper_basis(h(kk, kk));
  for (std::size_t a = 0; a < 4; ++a) s.linear(static_cast<Eigen::Index>(4 * kk + a)) = 2.0 * inner(w, own[a]).real();

  for (std::size_t j = 0; j < n; ++j) {
    const auto basis = improper_basis(h(kk, j));
    for (std::size_t a = 0; a < 4; ++a) {
      const CMatrix cx = c * basis[a];
      for (std::size_t bidx = a; bidx < 4; ++bidx) {
        const double q = inner(basis[bidx], cx).real();
        const auto ia = static_cast<Eigen::Index>(4 * j + a);
        const auto ib = static_cast<Eigen::Index>(4 * j + bidx);
        s.quadratic(ia, ib) = q;
        s.quadratic(ib, ia) = q;
      }
    }
  }
  return s;
}

}  // namespace risopt

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

#include "risopt/zf_prc.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "prc_internal.hpp"
#include "risopt/errors.hpp"

namespace risopt {

namespace {

HermitianMatrix zf_gram(const ChannelSet& channels, const PhaseVector& theta) {
  if (channels.K > channels.M) throw RankDeficient("zero forcing needs K <= M");
  return HermitianMatrix::gram(compose(channels, theta));
}

HermitianMatrix zf_gram_inverse(const ChannelSet& channels, const PhaseVector& theta) {
  try {
    return hermitian_inverse(zf_gram(channels, theta));
  } catch (const NotPositiveDefinite& e) {
    throw RankDeficient(e.what());
  }
}

// Householder QR of H^H, so H H^H = R^H R without forming the Gram.
struct ZfFactor {
  Eigen::MatrixXcd q;     // M x K, orthonormal columns
  Eigen::MatrixXcd rinv;  // K x K upper triangular
};

ZfFactor zf_factor(const ChannelSet& channels, const PhaseVector& theta) {
  if (channels.K > channels.M) throw RankDeficient("zero forcing needs K <= M");
  const CMatrix h = compose(channels, theta);
  const auto K = static_cast<Eigen::Index>(h.rows()), M = static_cast<Eigen::Index>(h.cols());
  Eigen::MatrixXcd ha(M, K);
  for (Eigen::Index i = 0; i < K; ++i)
    for (Eigen::Index j = 0; j < M; ++j)
      ha(j, i) = std::conj(h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ha);
  const Eigen::MatrixXcd r = qr.matrixQR().topRows(K).triangularView<Eigen::Upper>();
  const double scale = r.diagonal().cwiseAbs().maxCoeff();
  // Same pivot rule as the Cholesky factor of the Gram.
  const double floor = std::sqrt(static_cast<double>(K) * std::numeric_limits<double>::epsilon()) * scale;
  if (!(scale > 0.0) || r.diagonal().cwiseAbs().minCoeff() <= floor)
    throw RankDeficient("zero forcing: channel Gram is numerically singular");
  ZfFactor f;
  f.rinv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXcd::Identity(K, K));
  f.q = qr.householderQ() * Eigen::MatrixXcd::Identity(M, K);
  return f;
}

}  // namespace

CMatrix zf_precoder(const ChannelSet& channels, const PhaseVector& theta) {
  const ZfFactor f = zf_factor(channels, theta);
  const Eigen::MatrixXcd p = f.q * f.rinv.adjoint();
  CMatrix out(static_cast<std::size_t>(p.rows()), static_cast<std::size_t>(p.cols()));
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = p(i, j);
  return out;
}

std::vector<double> zf_inverse_diagonal(const ChannelSet& channels, const PhaseVector& theta) {
  const ZfFactor f = zf_factor(channels, theta);
  std::vector<double> d(static_cast<std::size_t>(f.rinv.rows()));
  for (Eigen::Index k = 0; k < f.rinv.rows(); ++k) d[static_cast<std::size_t>(k)] = f.rinv.row(k).squaredNorm();
  return d;
}

double PhaseSurrogate::evaluate(const PhaseVector& theta) const {
  const auto u = theta.phasors();
  if (u.size() != b.size() || C.dim() != u.size()) throw DimensionMismatch("PhaseSurrogate: size mismatch");
  double lin = 0.0;
  cplx quad{};
  for (std::size_t n = 0; n < u.size(); ++n) {
    lin += (u[n] * b[n]).real();
    for (std::size_t m = 0; m < u.size(); ++m) quad += std::conj(u[n]) * C(n, m) * u[m];
  }
  return constant + 2.0 * lin - quad.real();
}

PhaseVector random_phases(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> t(static_cast<std::size_t>(n));
  for (auto& x : t) x = u(rng);
  return PhaseVector(std::move(t));
}

double zf_objective(const ChannelSet& channels, const PhaseVector& theta) {
  double t = 0.0;
  for (double d : zf_inverse_diagonal(channels, theta)) t += d;
  return t;
}

PhaseVector phase_argmax(std::span<const cplx> c) {
  std::vector<double> t(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) t[n] = c[n] == cplx{} ? 0.0 : -std::arg(c[n]);
  return PhaseVector(std::move(t));
}

std::vector<cplx> zf_direction(const ChannelSet& channels, const PhaseVector& theta) {
  const CMatrix h = compose(channels, theta);
  const CMatrix g_inv = zf_gram_inverse(channels, theta).matrix();
  return detail::element_traces(channels, adjoint_times(h, g_inv * g_inv));
}

double trace_objective(const ChannelSet& channels, const PhaseVector& theta, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("trace_objective: alpha must be positive");
  const CMatrix h = compose(channels, theta);
  const CMatrix hh = h.adjoint();
  return inner(hh, hermitian_solve(HermitianMatrix::gram_adjoint(h).shifted(alpha), hh)).real();
}

PhaseSurrogate trace_surrogate(const ChannelSet& channels, const PhaseVector& anchor, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("trace_surrogate: alpha must be positive");
  const CMatrix h = compose(channels, anchor);
  const HermitianMatrix psi = hermitian_inverse(HermitianMatrix::gram_adjoint(h).shifted(alpha));
  const CMatrix x = times_adjoint(psi.matrix(), h);  // Psi H^H
  const CMatrix w = times_adjoint(x, x);
  PhaseSurrogate s;
  s.constant = -alpha * w.trace().real();
  s.b = detail::element_traces(channels, x);
  s.C = detail::element_curvature(channels, CMatrix::identity(static_cast<std::size_t>(channels.K)), w);
  return s;
}

double default_perturbation(const ChannelSet& channels, const PhaseVector& theta) {
  return 1e-3 * detail::mean_diagonal(HermitianMatrix::gram(compose(channels, theta)));
}

PrcRunReport step_descent(const ChannelSet& channels, const PhaseVector& theta0, StepRule rule,
                          const PrcOptions& options) {
  return detail::with_restarts(channels, theta0, options, [&](const PhaseVector& start) {
    return detail::run_step_descent(
        channels, start, rule, options, [&](const PhaseVector& t) { return zf_direction(channels, t); },
        [&](const PhaseVector& t) { return zf_objective(channels, t); }, false);
  });
}

PrcRunReport full_step_concave(const ChannelSet& channels, const PhaseVector& theta0, double alpha0,
                               const PrcOptions& options) {
  return detail::with_restarts(channels, theta0, options, [&](const PhaseVector& start) {
    PrcRunReport rep;
    PhaseVector theta = start;
    double f = zf_objective(channels, theta);
    rep.objective_trace.push_back(f);
    double alpha = alpha0;
    if (!(alpha > 0.0)) {
      const CMatrix g_inv = zf_gram_inverse(channels, theta).matrix();
      const HermitianMatrix probe = detail::element_curvature(
          channels, g_inv * g_inv, CMatrix::identity(static_cast<std::size_t>(channels.M)));
      alpha = 10.0 * dominant_eigenvalue(probe);
      if (!(alpha > 0.0)) alpha = 1.0;
    }
    bool frozen = false;
    for (int it = 1; it <= options.max_iter; ++it) {
      rep.iterations = it;
      const auto c = zf_direction(channels, theta);
      const auto u = theta.phasors();
      std::vector<cplx> d(c.size());
      for (std::size_t n = 0; n < d.size(); ++n) d[n] = alpha * std::conj(u[n]) + c[n];
      const PhaseVector next = phase_argmax(d);
      const double change = next.max_angular_distance(theta);
      double f_next = f;
      bool accepted = false;
      try {
        f_next = zf_objective(channels, next);
        accepted = f_next <= f;
      } catch (const RankDeficient&) {
      }
      if (accepted) {
        theta = next;
        f = f_next;
        rep.objective_trace.push_back(f);
        if (!frozen) alpha /= 10.0;
      } else {
        alpha *= 10.0;
        frozen = true;
      }
      if (change <= options.tol) {
        rep.converged = true;
        break;
      }
    }
    rep.theta_opt = theta;
    return rep;
  });
}

PrcRunReport full_step_perturbed(const ChannelSet& channels, const PhaseVector& theta0, double alpha,
                                 const PrcOptions& options) {
  if (channels.K > channels.M) throw RankDeficient("zero forcing needs K <= M");
  const double a = alpha > 0.0 ? alpha : default_perturbation(channels, theta0);
  return detail::with_restarts(channels, theta0, options, [&](const PhaseVector& start) {
    return detail::run_full_step(
        channels, start, options, [&](const PhaseVector& t) { return trace_surrogate(channels, t, a); },
        [&](const PhaseVector& t) { return trace_objective(channels, t, a); });
  });
}

double zf_throughput(const ChannelSet& channels, const PhaseVector& theta, double P, double sigma) {
  if (!(P > 0.0) || !(sigma > 0.0)) throw DomainError("zf_throughput: P and sigma must be positive");
  return std::log1p(P / (sigma * zf_objective(channels, theta)));
}

}  // namespace risopt

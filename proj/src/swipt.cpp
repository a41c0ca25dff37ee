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

#include "risopt/swipt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "risopt/errors.hpp"
#include "risopt/socp.hpp"
#include "risopt/zf_prc.hpp"

namespace risopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

// Rows F with F^T F = Q for a PSD matrix Q.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& q) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (q + q.transpose()));
  std::vector<Eigen::Index> keep;
  const double cut = 1e-14 * std::max(1e-300, eig.eigenvalues().cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < q.rows(); ++i)
    if (eig.eigenvalues()(i) > cut) keep.push_back(i);
  Eigen::MatrixXd f(static_cast<Eigen::Index>(keep.size()), q.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    f.row(static_cast<Eigen::Index>(r)) =
        std::sqrt(eig.eigenvalues()(keep[r])) * eig.eigenvectors().col(keep[r]).transpose();
  return f;
}

// Energy rows in normalized units: x~_l = ||h_l||^2 x_l / P and the
// threshold rows read (E x~)_l >= t1.
struct EnergyScaling {
  bool active = false;
  Eigen::MatrixXd E;
  Eigen::VectorXd norms;
};

EnergyScaling energy_scaling(const SwiptProblem& p) {
  EnergyScaling s;
  s.norms = p.energy.norms;
  s.active = p.energy.size() > 0 && p.energy.e_min > 0.0;
  if (!s.active) return s;
  const auto n = p.energy.norms.size();
  s.E.resize(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index m = 0; m < n; ++m)
      s.E(l, m) = p.energy.gram(l, m) * p.P * p.energy.zeta / (p.energy.norms(m) * p.energy.e_min);
  return s;
}

std::vector<double> scaled_energy(const SwiptProblem& p, const std::vector<double>& x) {
  std::vector<double> xs(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) xs[l] = p.energy.norms(static_cast<Eigen::Index>(l)) * x[l] / p.P;
  return xs;
}

std::vector<double> physical_energy(const SwiptProblem& p, const Eigen::VectorXd& xs) {
  std::vector<double> x(static_cast<std::size_t>(xs.size()));
  for (std::size_t l = 0; l < x.size(); ++l)
    x[l] = std::max(0.0, xs(static_cast<Eigen::Index>(l))) * p.P / p.energy.norms(static_cast<Eigen::Index>(l));
  return x;
}

// Variable layout of the convex inner problem.
struct Layout {
  std::size_t d = 0;   // information variables
  std::size_t ke = 0;  // energy variables (0 when inactive)
  std::size_t x = 0, t1 = 0, t2 = 0, gamma = 0, s1 = 0, s2 = 0, u1 = 0, u2 = 0, n = 0;
  bool energy = false;

  Layout(std::size_t info_dim, std::size_t energy_dim, bool with_energy) : d(info_dim), energy(with_energy) {
    std::size_t i = d;
    if (energy) {
      ke = energy_dim;
      x = i;
      i += ke;
      t1 = i++;
    }
    t2 = i++;
    gamma = i++;
    if (energy) {
      s1 = i++;
      s2 = i++;
      u1 = i++;
    }
    u2 = i++;
    n = i;
  }
  Eigen::VectorXd unit(std::size_t k) const {
    return Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  }
};

// rate surrogate(z) >= (a gamma + b t)^2 / 4 written as ||F w||^2 + q^T w <= c.
// The gamma column holds gamma / anchor_gamma and the row is divided by the
// anchor rate, which keeps low-rate instances well scaled.
void add_rate_row(ConicProblem& cp, const QuadraticSurrogate& sur, std::size_t gamma_idx, std::size_t t_idx,
                  double anchor_gamma, double anchor_t, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(cp.num_vars());
  const double scale = anchor_gamma * anchor_t;
  const Eigen::MatrixXd fz = psd_factor(sur.quadratic);
  const QuadraticSurrogate bil = bilinear_majorant(anchor_gamma, anchor_t);
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(fz.rows() + 1, n);
  F.topLeftCorner(fz.rows(), static_cast<Eigen::Index>(d)) = fz;
  F(fz.rows(), static_cast<Eigen::Index>(gamma_idx)) = std::sqrt(bil.quadratic(0, 0)) * anchor_gamma;
  F(fz.rows(), static_cast<Eigen::Index>(t_idx)) = std::sqrt(bil.quadratic(1, 1));
  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  q.head(static_cast<Eigen::Index>(d)) = -sur.linear;
  cp.add_quadratic(F / std::sqrt(scale), q / scale, sur.constant / scale);
}

void add_power_cap(ConicProblem& cp, const Eigen::VectorXd& w, double cap) {
  const auto d = w.size();
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d, static_cast<Eigen::Index>(cp.num_vars()));
  F.leftCols(d) = w.cwiseSqrt().asDiagonal();
  cp.add_quadratic(std::move(F), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(cp.num_vars())), cap);
}

ConicProblem build_inner(const SwiptProblem& p, const EnergyScaling& es, const Layout& L, const AllocationState& a) {
  const InfoModel& info = *p.info;
  const Eigen::VectorXd& w = info.power_weights();
  const auto n = static_cast<Eigen::Index>(L.n);
  ConicProblem cp(L.n);
  cp.set_objective_coefficient(L.gamma, 1.0);

  add_power_cap(cp, w, 3.0);
  {
    QuadOverLinConstraint c;  // sum w z^2 <= u2 t2
    c.F = Eigen::MatrixXd::Zero(w.size(), n);
    c.F.leftCols(w.size()) = w.cwiseSqrt().asDiagonal();
    c.g = Eigen::VectorXd::Zero(w.size());
    c.alpha = L.unit(L.u2);
    c.beta = L.unit(L.t2);
    cp.add_quad_over_lin(std::move(c));
  }

  if (L.energy) {
    const auto ke = static_cast<Eigen::Index>(L.ke);
    const auto xi = static_cast<Eigen::Index>(L.x);
    const auto xs = scaled_energy(p, a.x);
    double s_bar = 0.0;
    for (double v : xs) s_bar += v;
    if (!(s_bar > 0.0)) throw DegenerateAnchor("path_follow: zero energy power at the anchor");

    Eigen::VectorXd sum_x = Eigen::VectorXd::Zero(n);
    sum_x.segment(xi, ke).setOnes();
    cp.add_linear(sum_x, 3.0);
    for (std::size_t l = 0; l < L.ke; ++l) cp.add_bound(L.x + l, 0.0, kInf);
    for (Eigen::Index l = 0; l < ke; ++l) {
      Eigen::VectorXd row = L.unit(L.t1);
      row.segment(xi, ke) = -es.E.row(l).transpose();
      cp.add_linear(row, 0.0);
    }
    cp.add_linear(L.unit(L.s1) + L.unit(L.s2), 1.0);
    cp.add_linear(L.unit(L.u1) + L.unit(L.u2), 1.0);
    for (auto [s, t] : {std::pair{L.s1, L.t1}, std::pair{L.s2, L.t2}}) {
      QuadOverLinConstraint c;  // 1 <= s t
      c.F = Eigen::MatrixXd::Zero(1, n);
      c.g = Eigen::VectorXd::Ones(1);
      c.alpha = L.unit(s);
      c.beta = L.unit(t);
      cp.add_quad_over_lin(std::move(c));
    }
    {
      QuadOverLinConstraint c;  // (S^2 / S_bar + S_bar) / 2 <= u1 t1
      c.F = Eigen::MatrixXd::Zero(2, n);
      c.F.row(0).segment(xi, ke).setConstant(1.0 / std::sqrt(2.0 * s_bar));
      c.g = Eigen::VectorXd::Zero(2);
      c.g(1) = std::sqrt(0.5 * s_bar);
      c.alpha = L.unit(L.u1);
      c.beta = L.unit(L.t1);
      cp.add_quad_over_lin(std::move(c));
    }
  } else {
    cp.add_linear(-L.unit(L.t2), -1.0);
    cp.add_linear(L.unit(L.u2), 1.0);
  }

  for (int k = 0; k < info.num_users(); ++k)
    add_rate_row(cp, info.rate_minorant(a.z, k), L.gamma, L.t2, a.gamma, a.t2, L.d);
  return cp;
}

Eigen::VectorXd anchor_vector(const SwiptProblem& p, const Layout& L, const AllocationState& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(L.n));
  v.head(static_cast<Eigen::Index>(L.d)) = as_vector(a.z);
  const double info_frac = p.info->power_fraction(a.z);
  v(static_cast<Eigen::Index>(L.t2)) = a.t2;
  v(static_cast<Eigen::Index>(L.gamma)) = 1.0;
  v(static_cast<Eigen::Index>(L.u2)) = info_frac / a.t2;
  if (L.energy) {
    const auto xs = scaled_energy(p, a.x);
    double s = 0.0;
    for (std::size_t l = 0; l < xs.size(); ++l) {
      v(static_cast<Eigen::Index>(L.x + l)) = xs[l];
      s += xs[l];
    }
    v(static_cast<Eigen::Index>(L.t1)) = a.t1;
    v(static_cast<Eigen::Index>(L.s1)) = 1.0 / a.t1;
    v(static_cast<Eigen::Index>(L.s2)) = 1.0 / a.t2;
    v(static_cast<Eigen::Index>(L.u1)) = s / a.t1;
  }
  return v;
}

double true_gamma(const InfoModel& info, std::span<const double> z, double t2) { return info.min_rate(z) / t2; }

}  // namespace

// Energy ------------------------------------------------------------------

EnergyModel EnergyModel::from_channels(const ChannelSet& channels, double zeta, double e_min) {
  EnergyModel e;
  const auto ke = static_cast<std::size_t>(channels.K_E);
  e.gram.resize(static_cast<Eigen::Index>(ke), static_cast<Eigen::Index>(ke));
  e.norms.resize(static_cast<Eigen::Index>(ke));
  const CMatrix g = times_adjoint(channels.H_E, channels.H_E);
  for (std::size_t l = 0; l < ke; ++l) {
    e.norms(static_cast<Eigen::Index>(l)) = g(l, l).real();
    for (std::size_t m = 0; m < ke; ++m) e.gram(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) = std::norm(g(l, m));
  }
  e.zeta = zeta;
  e.e_min = e_min;
  return e;
}

double energy_tx_power(const EnergyModel& e, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(e.size())) throw DimensionMismatch("energy_tx_power: size mismatch");
  return e.norms.dot(as_vector(x));
}

double harvested(const EnergyModel& e, std::span<const double> x, int ell, double t1) {
  if (x.size() != static_cast<std::size_t>(e.size())) throw DimensionMismatch("harvested: size mismatch");
  if (!(t1 > 0.0)) throw DomainError("harvested: t1 must be positive");
  return e.gram.row(ell).dot(as_vector(x)) / t1;
}

// Information -------------------------------------------------------------

double zf_info_power(double p0, double a_zf) {
  if (!(a_zf > 0.0)) throw DomainError("zf_info_power: a_zf must be positive");
  return a_zf * p0 * p0;
}

RzfEffective rzf_effective_channels(const ChannelSet& channels, const PhaseVector& theta_opt, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("rzf_effective_channels: alpha must be positive");
  const CMatrix h = compose(channels, theta_opt);
  const CMatrix beams = hermitian_solve(HermitianMatrix::gram_adjoint(h).shifted(alpha), h.adjoint());  // M x K
  RzfEffective eff;
  eff.hbar = h * beams;
  eff.beam_power.resize(static_cast<std::size_t>(channels.K));
  for (std::size_t j = 0; j < eff.beam_power.size(); ++j) {
    double s = 0.0;
    for (std::size_t m = 0; m < beams.rows(); ++m) s += std::norm(beams(m, j));
    eff.beam_power[j] = s;
  }
  return eff;
}

double rate_rzf(std::span<const double> p, int k, const RzfEffective& eff, double sigma) {
  const auto n = eff.hbar.rows();
  Eigen::MatrixXd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::norm(eff.hbar(i, j));
  return interference_rate(p, k, g, sigma);
}

double rate_igs(std::span<const double> p_stacked, int k, const RzfEffective& eff, double sigma) {
  return 0.5 * improper_rho(p_stacked, k, eff.hbar, sigma);
}

double igs_info_power(std::span<const double> p_stacked, std::span<const double> beam_power) {
  if (p_stacked.size() != 4 * beam_power.size()) throw DimensionMismatch("igs_info_power: size mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < beam_power.size(); ++j) {
    double e = 0.0;
    for (std::size_t a = 0; a < 4; ++a) e += p_stacked[4 * j + a] * p_stacked[4 * j + a];
    s += beam_power[j] * e;
  }
  return s;
}

double InfoModel::power_fraction(std::span<const double> z) const {
  const Eigen::VectorXd& w = power_weights();
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) s += w(static_cast<Eigen::Index>(i)) * z[i] * z[i];
  return s;
}

double InfoModel::min_rate(std::span<const double> z) const {
  double m = kInf;
  for (int k = 0; k < num_users(); ++k) m = std::min(m, rate(z, k));
  return m;
}

namespace {

class ZfModel final : public InfoModel {
 public:
  ZfModel(double a_zf, int users, double P, double sigma) : users_(users), sigma_(sigma) {
    w_ = Eigen::VectorXd::Constant(1, a_zf * sigma / P);
  }
  std::size_t dim() const override { return 1; }
  int num_users() const override { return users_; }
  const Eigen::VectorXd& power_weights() const override { return w_; }
  double rate(std::span<const double> z, int) const override { return std::log1p(z[0] * z[0]); }
  QuadraticSurrogate rate_minorant(std::span<const double> a, int) const override { return r0_minorant(a[0], 1.0); }
  std::vector<double> physical(std::span<const double> z) const override { return {z[0] * std::sqrt(sigma_)}; }
  std::vector<double> initial(double budget, std::uint64_t) const override { return {std::sqrt(budget / w_(0))}; }
  std::string name() const override { return "zf"; }

 private:
  int users_;
  double sigma_;
  Eigen::VectorXd w_;
};

class PgsModel final : public InfoModel {
 public:
  PgsModel(const RzfEffective& eff, int users, double P, double sigma) : users_(users), sigma_(sigma) {
    const auto k = static_cast<Eigen::Index>(users);
    gains_.resize(k, k);
    w_.resize(k);
    scale_.resize(static_cast<std::size_t>(users));
    for (Eigen::Index j = 0; j < k; ++j) {
      const double gjj = std::norm(eff.hbar(static_cast<std::size_t>(j), static_cast<std::size_t>(j)));
      if (!(gjj > 0.0)) throw DegenerateAnchor("pgs model: zero direct gain");
      for (Eigen::Index i = 0; i < k; ++i)
        gains_(i, j) = std::norm(eff.hbar(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) / gjj;
      w_(j) = eff.beam_power[static_cast<std::size_t>(j)] * sigma / (gjj * P);
      scale_[static_cast<std::size_t>(j)] = std::sqrt(sigma / gjj);
    }
  }
  std::size_t dim() const override { return static_cast<std::size_t>(users_); }
  int num_users() const override { return users_; }
  const Eigen::VectorXd& power_weights() const override { return w_; }
  double rate(std::span<const double> z, int k) const override { return interference_rate(z, k, gains_, 1.0); }
  QuadraticSurrogate rate_minorant(std::span<const double> a, int k) const override {
    return rk_minorant(a, k, gains_, 1.0);
  }
  std::vector<double> physical(std::span<const double> z) const override {
    std::vector<double> p(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) p[j] = z[j] * scale_[j];
    return p;
  }
  std::vector<double> initial(double budget, std::uint64_t) const override {
    return std::vector<double>(dim(), std::sqrt(budget / w_.sum()));
  }
  std::string name() const override { return "pgs"; }

 private:
  int users_;
  double sigma_;
  Eigen::MatrixXd gains_;
  Eigen::VectorXd w_;
  std::vector<double> scale_;
};

class IgsModel final : public InfoModel {
 public:
  IgsModel(const RzfEffective& eff, int users, double P, double sigma, double share)
      : users_(users), share_(share) {
    const auto k = static_cast<std::size_t>(users);
    h_ = CMatrix(k, k);
    w_.resize(static_cast<Eigen::Index>(4 * k));
    scale_.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      const double a = std::abs(eff.hbar(j, j));
      if (!(a > 0.0)) throw DegenerateAnchor("igs model: zero direct gain");
      for (std::size_t i = 0; i < k; ++i) h_(i, j) = eff.hbar(i, j) / a;
      w_.segment(static_cast<Eigen::Index>(4 * j), 4).setConstant(eff.beam_power[j] * sigma / (a * a * P));
      scale_[j] = std::sqrt(sigma) / a;
    }
  }
  std::size_t dim() const override { return 4 * static_cast<std::size_t>(users_); }
  int num_users() const override { return users_; }
  const Eigen::VectorXd& power_weights() const override { return w_; }
  double rate(std::span<const double> z, int k) const override { return 0.5 * improper_rho(z, k, h_, 1.0); }
  QuadraticSurrogate rate_minorant(std::span<const double> a, int k) const override {
    QuadraticSurrogate s = rho_minorant(a, k, h_, 1.0);
    s.constant *= 0.5;
    s.linear *= 0.5;
    s.quadratic *= 0.5;
    return s;
  }
  std::vector<double> physical(std::span<const double> z) const override {
    std::vector<double> p(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) p[i] = z[i] * scale_[i / 4];
    return p;
  }
  std::vector<double> initial(double budget, std::uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> split(0.1, 0.4);
    const double c = std::sqrt(budget / (w_.sum() / 4.0));
    std::vector<double> z(dim());
    for (int j = 0; j < users_; ++j) {
      const double r = share_ >= 0.0 ? share_ : split(rng);
      const cplx p1 = std::polar(c * std::sqrt(1.0 - r), phase(rng));
      const cplx p2 = std::polar(c * std::sqrt(r), phase(rng));
      const auto b = 4 * static_cast<std::size_t>(j);
      z[b] = p1.real();
      z[b + 1] = p1.imag();
      z[b + 2] = p2.real();
      z[b + 3] = p2.imag();
    }
    return z;
  }
  std::string name() const override { return "igs"; }

 private:
  int users_;
  double share_;
  CMatrix h_;
  Eigen::VectorXd w_;
  std::vector<double> scale_;
};

}  // namespace

std::unique_ptr<InfoModel> make_zf_model(const ChannelSet& channels, const PhaseVector& theta_opt, double P,
                                         double sigma) {
  return std::make_unique<ZfModel>(zf_objective(channels, theta_opt), channels.K, P, sigma);
}

std::unique_ptr<InfoModel> make_pgs_model(const RzfEffective& eff, int num_users, double P, double sigma) {
  return std::make_unique<PgsModel>(eff, num_users, P, sigma);
}

std::unique_ptr<InfoModel> make_igs_model(const RzfEffective& eff, int num_users, double P, double sigma,
                                          double improper_share) {
  return std::make_unique<IgsModel>(eff, num_users, P, sigma, improper_share);
}

// Path following ------------------------------------------------------------

double max_violation(const SwiptProblem& p, const AllocationState& s) {
  const InfoModel& info = *p.info;
  const EnergyScaling es = energy_scaling(p);
  const double info_frac = info.power_fraction(s.z);
  double energy_frac = 0.0;
  double v = 0.0;
  std::vector<double> xs;
  if (!s.x.empty()) {
    xs = scaled_energy(p, s.x);
    for (double x : xs) {
      energy_frac += x;
      v = std::max(v, -x);
    }
  }
  const double inv_t1 = std::isfinite(s.t1) ? 1.0 / s.t1 : 0.0;
  v = std::max(v, energy_frac * inv_t1 + info_frac / s.t2 - 1.0);
  v = std::max(v, energy_frac - 3.0);
  v = std::max(v, info_frac - 3.0);
  v = std::max(v, inv_t1 + 1.0 / s.t2 - 1.0);
  if (es.active) {
    const Eigen::VectorXd got = es.E * as_vector(xs);
    for (Eigen::Index l = 0; l < got.size(); ++l) v = std::max(v, 1.0 - got(l) / s.t1);
  }
  for (int k = 0; k < info.num_users(); ++k) v = std::max(v, s.gamma * s.t2 - info.rate(s.z, k));
  return v;
}

AllocationState initial_point(const SwiptProblem& p, const SwiptOptions& options) {
  if (p.info == nullptr) throw DomainError("initial_point: missing information model");
  const InfoModel& info = *p.info;
  const EnergyScaling es = energy_scaling(p);
  AllocationState s;
  s.x.assign(static_cast<std::size_t>(p.energy.size()), 0.0);

  Eigen::VectorXd unit_x;  // energy solution for t1 = 1
  double energy_ratio = 0.0;
  if (es.active) {
    // Cheapest energy allocation meeting every threshold at t1 = 1.
    const auto ke = es.E.rows();
    ConicProblem lp(static_cast<std::size_t>(ke));
    lp.set_objective(-Eigen::VectorXd::Ones(ke));
    for (Eigen::Index l = 0; l < ke; ++l) {
      lp.add_linear(-es.E.row(l).transpose(), -1.0);
      lp.add_bound(static_cast<std::size_t>(l), 0.0, kInf);
    }
    const Eigen::VectorXd guess = 2.0 * es.E.diagonal().cwiseInverse() * static_cast<double>(ke);
    const SolveResult r = solve(lp, guess);
    if (r.status == SolveStatus::Infeasible) throw InfeasibleStart("initial_point: energy thresholds unreachable");
    const double cheapest = r.z_opt.sum();
    if (!(cheapest < 1.0)) throw InfeasibleStart("initial_point: energy thresholds exceed the power budget");
    const double margin = std::min(1.1, 0.5 * (1.0 + 1.0 / cheapest));
    unit_x = margin * r.z_opt;
    energy_ratio = unit_x.sum();
  }

  for (int a = 0; a < std::max(1, options.init_attempts); ++a) {
    const double t1 = a == 0 ? 2.0 : 1.0 + std::ldexp(1.0, -a);
    const double t2 = a == 0 ? 2.0 : t1 / (t1 - 1.0);
    if (es.active && t1 * energy_ratio > 3.0) continue;
    const double budget = 0.9 * std::min(t2 * (1.0 - energy_ratio), 3.0);
    s.t1 = t1;
    s.t2 = t2;
    if (es.active) s.x = physical_energy(p, t1 * unit_x);
    s.z = info.initial(budget, options.seed);
    const double g = true_gamma(info, s.z, t2);
    if (!(g > 0.0)) continue;
    s.gamma = g - 1e-6 > 0.5 * g ? g - 1e-6 : 0.5 * g;
    return s;
  }
  throw InfeasibleStart("initial_point: no feasible start found");
}

PathFollowResult path_follow(const SwiptProblem& problem, const SwiptOptions& options) {
  return path_follow(problem, initial_point(problem, options), options);
}

PathFollowResult path_follow(const SwiptProblem& problem, const AllocationState& start, const SwiptOptions& options) {
  if (problem.info == nullptr) throw DomainError("path_follow: missing information model");
  const InfoModel& info = *problem.info;
  const EnergyScaling es = energy_scaling(problem);
  const Layout L(info.dim(), static_cast<std::size_t>(problem.energy.size()), es.active);

  PathFollowResult res;
  AllocationState anchor = start;
  if (!es.active) {
    anchor.x.assign(static_cast<std::size_t>(problem.energy.size()), 0.0);
    anchor.t1 = kInf;
  }
  if (!(anchor.gamma > 0.0)) throw DegenerateAnchor("path_follow: start needs gamma > 0");
  res.gamma_trace.push_back(anchor.gamma);

  for (int it = 1; it <= options.max_iter; ++it) {
    res.iterations = it;
    const ConicProblem cp = build_inner(problem, es, L, anchor);
    Eigen::VectorXd guess = anchor_vector(problem, L, anchor);
    const SolveResult sol = solve(cp, guess);
    if (sol.status == SolveStatus::Infeasible) {
      res.status = "inner-infeasible";
      break;
    }
    AllocationState next = anchor;
    const Eigen::VectorXd& z = sol.z_opt;
    next.z.assign(z.data(), z.data() + L.d);
    next.t2 = z(static_cast<Eigen::Index>(L.t2));
    if (L.energy) {
      next.x = physical_energy(problem, z.segment(static_cast<Eigen::Index>(L.x), static_cast<Eigen::Index>(L.ke)));
      next.t1 = z(static_cast<Eigen::Index>(L.t1));
    }
    next.gamma = true_gamma(info, next.z, next.t2);
    if (!(next.gamma >= anchor.gamma) || max_violation(problem, next) > 1e-6) {
      res.converged = true;
      break;
    }
    const double delta = next.gamma - anchor.gamma;
    anchor = next;
    res.gamma_trace.push_back(anchor.gamma);
    if (delta <= options.tol) {
      res.converged = true;
      break;
    }
  }
  res.state = anchor;
  return res;
}

PathFollowResult info_only(const InfoModel& info, const SwiptOptions& options) {
  return info_only(info, info.initial(0.9, options.seed), options);
}

PathFollowResult info_only(const InfoModel& info, const std::vector<double>& start, const SwiptOptions& options) {
  const std::size_t d = info.dim();
  if (start.size() != d) throw DimensionMismatch("info_only: start has wrong length");
  const auto n = static_cast<Eigen::Index>(d + 1);
  PathFollowResult res;
  AllocationState anchor;
  anchor.z = start;
  anchor.t1 = kInf;
  anchor.t2 = 1.0;
  anchor.gamma = info.min_rate(start);
  if (!(anchor.gamma > 0.0)) throw DegenerateAnchor("info_only: zero rate at the start");
  res.gamma_trace.push_back(anchor.gamma);

  for (int it = 1; it <= options.max_iter; ++it) {
    res.iterations = it;
    ConicProblem cp(d + 1);
    cp.set_objective_coefficient(d, 1.0);
    add_power_cap(cp, info.power_weights(), 1.0);
    for (int k = 0; k < info.num_users(); ++k) {
      const QuadraticSurrogate sur = info.rate_minorant(anchor.z, k);
      const Eigen::MatrixXd fz = psd_factor(sur.quadratic);
      Eigen::MatrixXd F = Eigen::MatrixXd::Zero(fz.rows(), n);
      F.leftCols(static_cast<Eigen::Index>(d)) = fz;
      Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
      q.head(static_cast<Eigen::Index>(d)) = -sur.linear;
      // Last column is gamma / anchor gamma; rows are divided by the anchor rate.
      q(static_cast<Eigen::Index>(d)) = anchor.gamma;
      cp.add_quadratic(F / std::sqrt(anchor.gamma), q / anchor.gamma, sur.constant / anchor.gamma);
    }
    Eigen::VectorXd guess(n);
    guess << as_vector(anchor.z), 1.0;
    const SolveResult sol = solve(cp, guess);
    if (sol.status == SolveStatus::Infeasible) {
      res.status = "inner-infeasible";
      break;
    }
    std::vector<double> z(sol.z_opt.data(), sol.z_opt.data() + d);
    const double g = info.min_rate(z);
    if (!(g >= anchor.gamma) || info.power_fraction(z) > 1.0 + 1e-6) {
      res.converged = true;
      break;
    }
    const double delta = g - anchor.gamma;
    anchor.z = std::move(z);
    anchor.gamma = g;
    res.gamma_trace.push_back(g);
    if (delta <= options.tol) {
      res.converged = true;
      break;
    }
  }
  res.state = anchor;
  return res;
}

SwiptProblem make_problem(const Scenario& scenario, const ChannelSet& channels, const InfoModel& info) {
  SwiptProblem p;
  p.info = &info;
  p.energy = EnergyModel::from_channels(channels, scenario.zeta, scenario.e_min());
  p.P = scenario.P();
  return p;
}

PathFollowResult path_follow_zf(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                const SwiptOptions& options) {
  const auto info = make_zf_model(channels, theta_opt, scenario.P(), scenario.sigma());
  return path_follow(make_problem(scenario, channels, *info), options);
}

PathFollowResult path_follow_rzf(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                 double alpha, const SwiptOptions& options) {
  const auto info = make_pgs_model(rzf_effective_channels(channels, theta_opt, alpha), channels.K, scenario.P(),
                                   scenario.sigma());
  return path_follow(make_problem(scenario, channels, *info), options);
}

PathFollowResult path_follow_igs(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                                 double alpha, const SwiptOptions& options) {
  const auto info = make_igs_model(rzf_effective_channels(channels, theta_opt, alpha), channels.K, scenario.P(),
                                   scenario.sigma());
  return path_follow(make_problem(scenario, channels, *info), options);
}

PathFollowResult info_only(const Scenario& scenario, const ChannelSet& channels, const PhaseVector& theta_opt,
                           double alpha, Signaling mode, const SwiptOptions& options) {
  const RzfEffective eff = rzf_effective_channels(channels, theta_opt, alpha);
  const auto info = mode == Signaling::Proper ? make_pgs_model(eff, channels.K, scenario.P(), scenario.sigma())
                                              : make_igs_model(eff, channels.K, scenario.P(), scenario.sigma());
  return info_only(*info, options);
}

}  // namespace risopt

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

#include "risopt/socp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_size(const Eigen::VectorXd& v, std::size_t n, const char* what) {
  if (static_cast<std::size_t>(v.size()) != n) throw DimensionMismatch(std::string(what) + ": wrong length");
}

double qol_slack(const QuadOverLinConstraint& c, const Eigen::VectorXd& z, double* s_out = nullptr,
                 double* t_out = nullptr) {
  const double s = c.alpha.dot(z) + c.alpha0;
  const double t = c.beta.dot(z) + c.beta0;
  if (s_out) *s_out = s;
  if (t_out) *t_out = t;
  return s * t - (c.F * z + c.g).squaredNorm();
}

// Log barrier of a ConicProblem with cached quadratic forms.
class Barrier {
 public:
  explicit Barrier(const ConicProblem& p) : p_(p) {
    for (const auto& q : p.quadratic()) quad_gram_.push_back(q.F.transpose() * q.F);
    for (const auto& q : p.quad_over_lin()) qol_gram_.push_back(q.F.transpose() * q.F);
  }

  double parameter() const {
    return static_cast<double>(p_.linear().size() + p_.quadratic().size() + 3 * p_.quad_over_lin().size());
  }

  // +inf outside the domain.
  double value(const Eigen::VectorXd& z) const {
    double v = 0.0;
    for (const auto& l : p_.linear()) {
      const double r = l.b - l.a.dot(z);
      if (!(r > 0.0)) return kInf;
      v -= std::log(r);
    }
    for (std::size_t i = 0; i < p_.quadratic().size(); ++i) {
      const auto& q = p_.quadratic()[i];
      const double r = q.b - z.dot(quad_gram_[i] * z) - q.q.dot(z);
      if (!(r > 0.0)) return kInf;
      v -= std::log(r);
    }
    for (const auto& q : p_.quad_over_lin()) {
      double s = 0.0;
      const double r = qol_slack(q, z, &s);
      if (!(r > 0.0) || !(s > 0.0)) return kInf;
      v -= std::log(r) + std::log(s);
    }
    return v;
  }

  void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad, Eigen::MatrixXd& hess) const {
    const auto n = z.size();
    grad.setZero(n);
    hess.setZero(n, n);
    for (const auto& l : p_.linear()) {
      const double r = l.b - l.a.dot(z);
      grad += l.a / r;
      hess.noalias() += l.a * l.a.transpose() / (r * r);
    }
    for (std::size_t i = 0; i < p_.quadratic().size(); ++i) {
      const auto& q = p_.quadratic()[i];
      const Eigen::VectorXd dg = 2.0 * quad_gram_[i] * z + q.q;  // gradient of the constraint function
      const double r = q.b - z.dot(quad_gram_[i] * z) - q.q.dot(z);
      grad += dg / r;
      hess.noalias() += dg * dg.transpose() / (r * r) + 2.0 * quad_gram_[i] / r;
    }
    for (std::size_t i = 0; i < p_.quad_over_lin().size(); ++i) {
      const auto& q = p_.quad_over_lin()[i];
      double s = 0.0;
      double t = 0.0;
      const double r = qol_slack(q, z, &s, &t);
      const Eigen::VectorXd w = q.F * z + q.g;
      const Eigen::VectorXd dr = q.alpha * t + q.beta * s - 2.0 * q.F.transpose() * w;
      grad -= dr / r + q.alpha / s;
      hess.noalias() += dr * dr.transpose() / (r * r) + q.alpha * q.alpha.transpose() / (s * s);
      hess.noalias() -= (q.alpha * q.beta.transpose() + q.beta * q.alpha.transpose() - 2.0 * qol_gram_[i]) / r;
    }
  }

 private:
  const ConicProblem& p_;
  std::vector<Eigen::MatrixXd> quad_gram_;
  std::vector<Eigen::MatrixXd> qol_gram_;
};

struct CenteringOutcome {
  bool ok = true;
  bool stopped = false;
  int steps = 0;
};

// Minimizes -t c^T z + barrier(z) from a strictly feasible z.
using StopRule = std::function<bool(const Eigen::VectorXd&)>;

CenteringOutcome center(const ConicProblem& p, const Barrier& barrier, double t, Eigen::VectorXd& z,
                        const SolveOptions& o, Eigen::VectorXd& grad_out, const StopRule& stop) {
  CenteringOutcome out;
  const Eigen::VectorXd& c = p.objective();
  auto merit = [&](const Eigen::VectorXd& x) { return -t * c.dot(x) + barrier.value(x); };
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  double f = merit(z);
  for (int it = 0; it < o.max_newton; ++it) {
    barrier.derivatives(z, grad, hess);
    grad -= t * c;
    grad_out = grad;
    const double reg = 1e-14 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
    hess.diagonal().array() += reg;
    const Eigen::VectorXd dz = -hess.ldlt().solve(grad);
    const double decrement = -grad.dot(dz);
    if (!std::isfinite(decrement)) {
      out.ok = false;
      return out;
    }
    // Below the rounding noise of the merit value no step can be verified.
    if (decrement / 2.0 <= std::max(1e-11, 1e-13 * std::abs(f))) return out;
    double step = 1.0;
    double f_new = merit(z + dz);
    while (!(f_new <= f - o.armijo * step * decrement) && step > 1e-16) {
      step *= o.backtrack;
      f_new = merit(z + step * dz);
    }
    ++out.steps;
    if (step <= 1e-16) return out;  // no further progress at double precision
    z += step * dz;
    f = f_new;
    if (stop && stop(z)) {
      out.stopped = true;
      return out;
    }
    if (!z.allFinite() || z.cwiseAbs().maxCoeff() > 1e15) {
      out.ok = false;
      return out;
    }
  }
  out.ok = false;
  return out;
}

SolveResult barrier_solve(const ConicProblem& p, Eigen::VectorXd z, const SolveOptions& o,
                          const StopRule& stop = {}) {
  SolveResult res;
  const Barrier barrier(p);
  const double m = std::max(1.0, barrier.parameter());
  double t = o.t0;
  Eigen::VectorXd grad;
  res.status = SolveStatus::Optimal;
  for (;;) {
    const CenteringOutcome c = center(p, barrier, t, z, o, grad, stop);
    res.newton_steps += c.steps;
    res.path.push_back(p.objective().dot(z));
    if (c.stopped) break;
    if (!c.ok) {
      res.status = SolveStatus::IterLimit;
      break;
    }
    if (m / t <= o.gap_tol) break;
    t *= o.t_factor;
  }
  res.z_opt = z;
  res.objective_value = p.objective().dot(z);
  res.kkt_residual = grad.size() > 0 ? grad.norm() / t : 0.0;
  res.duality_gap = m / t;
  return res;
}

}  // namespace

ConicProblem::ConicProblem(std::size_t num_vars) : n_(num_vars), c_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_vars))) {}

void ConicProblem::set_objective(Eigen::VectorXd c) {
  check_size(c, n_, "set_objective");
  c_ = std::move(c);
}

void ConicProblem::set_objective_coefficient(std::size_t i, double v) {
  if (i >= n_) throw DimensionMismatch("set_objective_coefficient: index out of range");
  c_(static_cast<Eigen::Index>(i)) = v;
}

void ConicProblem::add_linear(Eigen::VectorXd a, double b) {
  check_size(a, n_, "add_linear");
  linear_.push_back({std::move(a), b});
}

void ConicProblem::add_quadratic(Eigen::MatrixXd F, Eigen::VectorXd q, double b) {
  if (static_cast<std::size_t>(F.cols()) != n_) throw DimensionMismatch("add_quadratic: F has wrong width");
  check_size(q, n_, "add_quadratic");
  quadratic_.push_back({std::move(F), std::move(q), b});
}

void ConicProblem::add_quadratic_psd(const Eigen::MatrixXd& Q, Eigen::VectorXd q, double b) {
  if (static_cast<std::size_t>(Q.rows()) != n_ || Q.rows() != Q.cols())
    throw DimensionMismatch("add_quadratic_psd: Q must be n x n");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (Q + Q.transpose()));
  const Eigen::VectorXd lam = eig.eigenvalues();
  const double floor = -1e-10 * std::max(1.0, lam.cwiseAbs().maxCoeff());
  if (lam.minCoeff() < floor) throw DomainError("add_quadratic_psd: Q is not positive semidefinite");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 0.0) keep.push_back(i);
  Eigen::MatrixXd F(static_cast<Eigen::Index>(keep.size()), Q.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    F.row(static_cast<Eigen::Index>(r)) = std::sqrt(lam(keep[r])) * eig.eigenvectors().col(keep[r]).transpose();
  add_quadratic(std::move(F), std::move(q), b);
}

void ConicProblem::add_quad_over_lin(Eigen::MatrixXd F, Eigen::VectorXd g, std::size_t s, std::size_t t) {
  if (s >= n_ || t >= n_) throw DimensionMismatch("add_quad_over_lin: index out of range");
  QuadOverLinConstraint c;
  c.F = std::move(F);
  c.g = std::move(g);
  c.alpha = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(s));
  c.beta = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(t));
  add_quad_over_lin(std::move(c));
}

void ConicProblem::add_quad_over_lin(QuadOverLinConstraint c) {
  if (static_cast<std::size_t>(c.F.cols()) != n_ || c.F.rows() != c.g.size())
    throw DimensionMismatch("add_quad_over_lin: F/g shape mismatch");
  check_size(c.alpha, n_, "add_quad_over_lin");
  check_size(c.beta, n_, "add_quad_over_lin");
  qol_.push_back(std::move(c));
}

void ConicProblem::add_bound(std::size_t i, double lower, double upper) {
  if (i >= n_) throw DimensionMismatch("add_bound: index out of range");
  if (lower > upper) throw DomainError("add_bound: lower > upper");
  const auto e = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(i));
  if (std::isfinite(upper)) add_linear(e, upper);
  if (std::isfinite(lower)) add_linear(-e, -lower);
}

double ConicProblem::min_slack(const Eigen::VectorXd& z) const {
  check_size(z, n_, "min_slack");
  double m = kInf;
  for (const auto& l : linear_) m = std::min(m, l.b - l.a.dot(z));
  for (const auto& q : quadratic_) m = std::min(m, q.b - (q.F * z).squaredNorm() - q.q.dot(z));
  for (const auto& q : qol_) {
    double s = 0.0;
    m = std::min(m, qol_slack(q, z, &s));
    m = std::min(m, s);
  }
  return m;
}

double ConicProblem::max_violation(const Eigen::VectorXd& z) const {
  return std::max(0.0, -min_slack(z));
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::IterLimit:
      return "iter-limit";
  }
  return "unknown";
}

std::optional<Eigen::VectorXd> phase_one(const ConicProblem& problem, const SolveOptions& options,
                                         const std::optional<Eigen::VectorXd>& guess) {
  const auto n = static_cast<Eigen::Index>(problem.num_vars());
  Eigen::VectorXd z0 = guess ? *guess : Eigen::VectorXd::Zero(n);
  check_size(z0, problem.num_vars(), "phase_one");

  // Relax every constraint by a common slack s and minimize s over s >= -1.
  ConicProblem aux(problem.num_vars() + 1);
  auto extend = [&](const Eigen::VectorXd& a, double last) {
    Eigen::VectorXd v(n + 1);
    v << a, last;
    return v;
  };
  double s0 = 0.0;
  for (const auto& l : problem.linear()) {
    aux.add_linear(extend(l.a, -1.0), l.b);
    s0 = std::max(s0, l.a.dot(z0) - l.b);
  }
  for (const auto& q : problem.quadratic()) {
    Eigen::MatrixXd F(q.F.rows(), n + 1);
    F << q.F, Eigen::VectorXd::Zero(q.F.rows());
    aux.add_quadratic(std::move(F), extend(q.q, -1.0), q.b);
    s0 = std::max(s0, (q.F * z0).squaredNorm() + q.q.dot(z0) - q.b);
  }
  for (const auto& q : problem.quad_over_lin()) {
    QuadOverLinConstraint c;
    c.F.resize(q.F.rows(), n + 1);
    c.F << q.F, Eigen::VectorXd::Zero(q.F.rows());
    c.g = q.g;
    c.alpha = extend(q.alpha, 1.0);
    c.alpha0 = q.alpha0;
    c.beta = extend(q.beta, 1.0);
    c.beta0 = q.beta0;
    const double w = (q.F * z0 + q.g).norm();
    const double lo = std::min(q.alpha.dot(z0) + q.alpha0, q.beta.dot(z0) + q.beta0);
    s0 = std::max(s0, w - lo);
    aux.add_quad_over_lin(std::move(c));
  }
  // A wide ball around the guess keeps the auxiliary problem bounded.
  {
    const double radius2 = 100.0 * (1.0 + z0.squaredNorm());
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n, n + 1);
    F.leftCols(n).setIdentity();
    aux.add_quadratic(std::move(F), extend(-2.0 * z0, 0.0), radius2 - z0.squaredNorm());
  }
  aux.add_linear(-Eigen::VectorXd::Unit(n + 1, n), 1.0);
  aux.set_objective_coefficient(static_cast<std::size_t>(n), -1.0);

  Eigen::VectorXd start(n + 1);
  start << z0, s0 + 1.0;
  // Stop once the original constraints hold with a usable margin.
  const StopRule enough = [&](const Eigen::VectorXd& x) {
    return x(n) < -1e-4 && problem.min_slack(x.head(n)) > 0.0;
  };
  SolveOptions o = options;
  o.t0 = std::max(options.t0, Barrier(aux).parameter() / (s0 + 1.0));
  const SolveResult r = barrier_solve(aux, start, o, enough);
  const double s = r.z_opt(n);
  const Eigen::VectorXd z = r.z_opt.head(n);
  if (!(s < -1e-9) || !(problem.min_slack(z) > 0.0)) return std::nullopt;
  return z;
}

SolveResult solve(const ConicProblem& problem, const std::optional<Eigen::VectorXd>& start,
                  const SolveOptions& options) {
  std::optional<Eigen::VectorXd> z0;
  if (start && problem.min_slack(*start) > 1e-9 && std::isfinite(Barrier(problem).value(*start))) z0 = start;
  if (!z0) z0 = phase_one(problem, options, start);
  if (!z0) {
    SolveResult r;
    r.status = SolveStatus::Infeasible;
    return r;
  }
  return barrier_solve(problem, *z0, options);
}

std::string dump(const ConicProblem& problem) {
  std::ostringstream os;
  os.precision(17);
  auto vec = [&](const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) os << ' ' << v(i);
  };
  auto mat = [&](const Eigen::MatrixXd& m) {
    os << ' ' << m.rows() << ' ' << m.cols();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) os << ' ' << m(i, j);
  };
  os << "vars " << problem.num_vars() << '\n';
  os << "maximize";
  vec(problem.objective());
  os << '\n';
  for (const auto& l : problem.linear()) {
    os << "linear " << l.b << " a";
    vec(l.a);
    os << '\n';
  }
  for (const auto& q : problem.quadratic()) {
    os << "quadratic " << q.b << " q";
    vec(q.q);
    os << " F";
    mat(q.F);
    os << '\n';
  }
  for (const auto& q : problem.quad_over_lin()) {
    os << "quad_over_lin alpha0 " << q.alpha0 << " beta0 " << q.beta0 << " alpha";
    vec(q.alpha);
    os << " beta";
    vec(q.beta);
    os << " g";
    vec(q.g);
    os << " F";
    mat(q.F);
    os << '\n';
  }
  return os.str();
}

}  // namespace risopt

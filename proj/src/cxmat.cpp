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

#include "risopt/cxmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

void require_finite(const CMatrix& a, const char* where) {
  if (!a.all_finite()) throw DomainError(std::string(where) + ": non-finite matrix entry");
}

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* where) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(where) + ": shape mismatch");
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw DimensionMismatch("CMatrix: entry count != rows*cols");
  require_finite(*this, "CMatrix");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(*this, "CMatrix");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::row(std::span<const cplx> v) {
  return CMatrix(1, v.size(), std::vector<cplx>(v.begin(), v.end()));
}

CMatrix CMatrix::column(std::span<const cplx> v) {
  return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conj() const {
  CMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

CMatrix CMatrix::row_block(std::size_t i) const {
  CMatrix r(1, cols_);
  std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_), cols_, r.data_.begin());
  return r;
}

std::vector<cplx> CMatrix::column_vector(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

cplx CMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::norm2() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double CMatrix::norm() const { return std::sqrt(norm2()); }

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

CMatrix adjoint_times(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("adjoint_times: row counts differ");
  CMatrix r(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const cplx aki = std::conj(a(k, i));
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aki * b(k, j);
    }
  }
  return r;
}

CMatrix times_adjoint(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) throw DimensionMismatch("times_adjoint: column counts differ");
  CMatrix r(a.rows(), b.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * std::conj(b(j, k));
      r(i, j) = s;
    }
  }
  return r;
}

cplx inner(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "inner");
  cplx s = 0.0;
  const auto da = a.data();
  const auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += std::conj(da[i]) * db[i];
  return s;
}

cplx trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionMismatch("trace_of_product: shapes incompatible");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

HermitianMatrix::HermitianMatrix(const CMatrix& a) : m_(a.rows(), a.cols()) {
  if (!a.square()) throw DimensionMismatch("HermitianMatrix: matrix is not square");
  require_finite(a, "HermitianMatrix");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m_(i, i) = cplx{a(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      m_(i, j) = v;
      m_(j, i) = std::conj(v);
    }
  }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(CMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::gram(const CMatrix& x) { return HermitianMatrix(times_adjoint(x, x)); }

HermitianMatrix HermitianMatrix::gram_adjoint(const CMatrix& x) {
  return HermitianMatrix(adjoint_times(x, x));
}

HermitianMatrix HermitianMatrix::shifted(double s) const {
  HermitianMatrix r = *this;
  for (std::size_t i = 0; i < dim(); ++i) r.m_(i, i) += s;
  return r;
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
  HermitianMatrix r = *this;
  r.m_ *= s;
  return r;
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

double HermitianMatrix::max_diagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) m = std::max(m, std::abs(m_(i, i).real()));
  return m;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.matrix() + b.matrix());
}

CMatrix cholesky(const HermitianMatrix& a) {
  const std::size_t n = a.dim();
  const CMatrix& m = a.matrix();
  const double tol =
      static_cast<double>(n) * std::numeric_limits<double>::epsilon() * a.max_diagonal();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > tol)) throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) + " not positive");
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace {

// Inverse of a lower-triangular matrix by forward substitution.
CMatrix lower_inverse(const CMatrix& l) {
  const std::size_t n = l.rows();
  CMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t k = j; k < i; ++k) s += l(i, k) * inv(k, j);
      inv(i, j) = -s / l(i, i);
    }
  }
  return inv;
}

}  // namespace

HermitianMatrix hermitian_inverse(const HermitianMatrix& a) {
  const CMatrix linv = lower_inverse(cholesky(a));
  // A^{-1} = L^{-H} L^{-1}
  return HermitianMatrix(adjoint_times(linv, linv));
}

CMatrix hermitian_solve(const HermitianMatrix& a, const CMatrix& b) {
  if (b.rows() != a.dim()) throw DimensionMismatch("hermitian_solve: rhs rows != dim");
  const CMatrix l = cholesky(a);
  const std::size_t n = a.dim();
  CMatrix x = b;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = x(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x(k, c);
      x(i, c) = s / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      cplx s = x(ii, c);
      for (std::size_t k = ii + 1; k < n; ++k) s -= std::conj(l(k, ii)) * x(k, c);
      x(ii, c) = s / l(ii, ii);
    }
  }
  return x;
}

double trace_of_inverse(const HermitianMatrix& a) {
  // trace(A^{-1}) = ||L^{-1}||_F^2
  return lower_inverse(cholesky(a)).norm2();
}

double logdet(const HermitianMatrix& a) {
  const CMatrix l = cholesky(a);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += 2.0 * std::log(l(i, i).real());
  return s;
}

EigenEstimate dominant_eigenpair(const HermitianMatrix& a, std::span<const cplx> start, int max_iter) {
  const std::size_t n = a.dim();
  const CMatrix& m = a.matrix();
  EigenEstimate est;
  if (n == 0) return est;
  const double scale = m.norm();
  std::vector<cplx> v(n);
  if (start.size() == n) {
    std::copy(start.begin(), start.end(), v.begin());
  } else {
    std::fill(v.begin(), v.end(), cplx{1.0, 0.0});
  }
  double vn = 0.0;
  for (const auto& z : v) vn += std::norm(z);
  if (vn == 0.0) {
    std::fill(v.begin(), v.end(), cplx{1.0, 0.0});
    vn = static_cast<double>(n);
  }
  for (auto& z : v) z /= std::sqrt(vn);
  if (scale == 0.0) {
    est.vector = v;
    return est;
  }

  std::vector<cplx> w(n);
  const double tol = 1e-9 * scale;
  for (int it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
      w[i] = s;
    }
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += (std::conj(v[i]) * w[i]).real();
    double res = 0.0;
    double wn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      res += std::norm(w[i] - lambda * v[i]);
      wn += std::norm(w[i]);
    }
    res = std::sqrt(res);
    est.value = std::max(lambda, 0.0);
    est.residual = res;
    est.iterations = it;
    if (res <= tol || wn == 0.0) {
      est.vector = v;
      return est;
    }
    wn = std::sqrt(wn);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  throw ConvergenceFailure("dominant_eigenpair: residual " + std::to_string(est.residual) +
                           " above tolerance after " + std::to_string(max_iter) + " iterations");
}

double dominant_eigenvalue(const HermitianMatrix& a) { return dominant_eigenpair(a).value; }

}  // namespace risopt

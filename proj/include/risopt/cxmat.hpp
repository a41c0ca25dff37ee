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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace risopt {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Entries are always finite; every
/// constructor and kernel entry point rejects NaN/Inf with DomainError.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> d);
  static CMatrix row(std::span<const cplx> v);
  static CMatrix column(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }
  std::span<const cplx> row_span(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  CMatrix row_block(std::size_t i) const;
  std::vector<cplx> column_vector(std::size_t j) const;

  cplx trace() const;
  /// Squared Frobenius norm, i.e. trace(A A^H).
  double norm2() const;
  double norm() const;
  double max_abs() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(CMatrix a, cplx s);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

/// A^H B computed without forming A^H.
CMatrix adjoint_times(const CMatrix& a, const CMatrix& b);
/// A B^H computed without forming B^H.
CMatrix times_adjoint(const CMatrix& a, const CMatrix& b);
/// trace(A^H B), the Frobenius inner product <A, B>.
cplx inner(const CMatrix& a, const CMatrix& b);
/// trace(A B) without forming the product.
cplx trace_of_product(const CMatrix& a, const CMatrix& b);

/// Complex matrix with exact conjugate symmetry and a real diagonal.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Takes the Hermitian part (A + A^H)/2; diagonal imaginary parts are zeroed.
  explicit HermitianMatrix(const CMatrix& a);

  static HermitianMatrix identity(std::size_t n);
  /// [X]^2 = X X^H.
  static HermitianMatrix gram(const CMatrix& x);
  /// X^H X.
  static HermitianMatrix gram_adjoint(const CMatrix& x);

  std::size_t dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// Returns A + s I.
  HermitianMatrix shifted(double s) const;
  HermitianMatrix scaled(double s) const;
  double trace() const;
  double max_diagonal() const;

 private:
  CMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);

/// Lower Cholesky factor L with A = L L^H.
/// Throws NotPositiveDefinite when a pivot falls at or below dim*eps*max|diag|.
CMatrix cholesky(const HermitianMatrix& a);

HermitianMatrix hermitian_inverse(const HermitianMatrix& a);
/// Solves A X = B for Hermitian positive definite A.
CMatrix hermitian_solve(const HermitianMatrix& a, const CMatrix& b);
double trace_of_inverse(const HermitianMatrix& a);
double logdet(const HermitianMatrix& a);

struct EigenEstimate {
  double value = 0.0;
  std::vector<cplx> vector;
  double residual = 0.0;
  int iterations = 0;
};

/// Largest eigenvalue of a Hermitian PSD matrix by shift-free power
/// iteration. Stops when ||A v - lambda v|| <= 1e-9 ||A||_F.
/// The default start vector is the normalized all-ones vector.
EigenEstimate dominant_eigenpair(const HermitianMatrix& a, std::span<const cplx> start = {},
                                 int max_iter = 10000);
double dominant_eigenvalue(const HermitianMatrix& a);

}  // namespace risopt

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

// Independent reference computations shared by the test binaries.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "risopt/cxmat.hpp"

namespace risopt::testing {

inline CMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  CMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

/// G G^H + shift I.
inline HermitianMatrix random_pd(std::size_t n, std::mt19937_64& rng, double shift = 1.0) {
  return HermitianMatrix::gram(random_matrix(n, n, rng)).shifted(shift);
}

/// Determinant by cofactor expansion along the first row.
inline cplx cofactor_det(const CMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  cplx d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    CMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    d += (j % 2 ? -1.0 : 1.0) * a(0, j) * cofactor_det(minor);
  }
  return d;
}

/// Inverse via the adjugate formula.
inline CMatrix adjugate_inverse(const CMatrix& a) {
  const std::size_t n = a.rows();
  const cplx det = cofactor_det(a);
  CMatrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = 1.0 / det;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c)
          if (c != j) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      inv(j, i) = ((i + j) % 2 ? -1.0 : 1.0) * cofactor_det(minor) / det;
    }
  return inv;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline std::vector<double> uniform_vector(std::size_t n, double lo, double hi, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace risopt::testing

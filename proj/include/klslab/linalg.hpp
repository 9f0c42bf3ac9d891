// Copyright 2026 The klslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KLSLAB_LINALG_HPP
#define KLSLAB_LINALG_HPP

#include <span>
#include <vector>

namespace klslab {

/// Small dense row-major matrix. The dimensions in this project are the
/// ambient dimensions of the bodies (tens at most), so nothing here is
/// tuned for large n.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n);
  Matrix transposed() const;
};

Matrix matmul(const Matrix& x, const Matrix& y);
void matvec(const Matrix& m, std::span<const double> x, std::span<double> out);

struct SymEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns are eigenvectors
};

/// Cyclic Jacobi iteration for a symmetric matrix; off-diagonal norm is
/// driven below tol * frobenius.
SymEigen jacobi_eigen(const Matrix& sym, double tol = 1e-12, int max_sweeps = 100);

/// V diag(values)^p V^T for a symmetric PSD matrix. Throws
/// std::invalid_argument when the smallest eigenvalue is below
/// rel_floor * largest (near-singular input).
Matrix sym_power(const Matrix& sym, double exponent, double rel_floor = 1e-10);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);  // squared euclidean norm
double norm(std::span<const double> x);

}  // namespace klslab

#endif  // KLSLAB_LINALG_HPP

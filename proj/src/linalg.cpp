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

#include "klslab/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace klslab {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul: shape mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

void matvec(const Matrix& m, std::span<const double> x, std::span<double> out) {
  if (static_cast<int>(x.size()) != m.cols || static_cast<int>(out.size()) != m.rows)
    throw std::invalid_argument("matvec: shape mismatch");
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * x[j];
    out[i] = s;
  }
}

SymEigen jacobi_eigen(const Matrix& sym, double tol, int max_sweeps) {
  if (sym.rows != sym.cols) throw std::invalid_argument("jacobi_eigen: not square");
  const int n = sym.rows;
  Matrix a = sym;
  Matrix v = Matrix::identity(n);

  double fro = 0.0;
  for (double x : a.a) fro += x * x;
  fro = std::sqrt(fro);
  if (fro == 0.0) fro = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol * fro) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          const double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  SymEigen e;
  e.values.resize(n);
  for (int i = 0; i < n; ++i) e.values[i] = a(i, i);
  e.vectors = Matrix(n, n);
  // sort ascending, permuting columns along
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (e.values[order[j]] < e.values[order[i]]) std::swap(order[i], order[j]);
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = e.values[order[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e.vectors(i, j) = v(i, order[j]);
  e.values = std::move(sorted);
  return e;
}

Matrix sym_power(const Matrix& sym, double exponent, double rel_floor) {
  SymEigen e = jacobi_eigen(sym);
  const int n = sym.rows;
  const double lmax = e.values.empty() ? 0.0 : e.values.back();
  Matrix out(n, n);
  for (int k = 0; k < n; ++k) {
    const double lam = e.values[k];
    if (lam <= rel_floor * lmax || lam <= 0.0)
      throw std::invalid_argument("sym_power: near-singular matrix");
    const double w = std::pow(lam, exponent);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out(i, j) += w * e.vectors(i, k) * e.vectors(j, k);
  }
  return out;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return dot(x, x); }

double norm(std::span<const double> x) { return std::sqrt(norm2(x)); }

}  // namespace klslab

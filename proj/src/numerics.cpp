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

#include "klslab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace klslab {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double rtol, double scale,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * rtol * (std::abs(left + right) + scale))
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, rtol, scale, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, rtol, scale, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rtol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  // absolute fallback scale keeps the recursion from chasing zero integrals
  const double scale = 1e-300 + std::abs(whole) * 1e-6;
  return simpson_rec(f, a, b, fa, fm, fb, whole, rtol, scale, max_depth);
}

double concave_argmax(const std::function<double(double)>& f, double a, double b,
                      double xtol) {
  constexpr double inv_phi = 0.6180339887498949;
  double lo = a, hi = b;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > xtol * (1.0 + std::abs(lo) + std::abs(hi))) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> uniform_nodes(double lo, double hi, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / (n - 1);
  x.back() = hi;
  return x;
}

std::vector<double> log_nodes_from_zero(double hi, int n, double span_ratio) {
  std::vector<double> x(n);
  x[0] = 0.0;
  const double lo = hi * span_ratio;
  for (int i = 1; i < n; ++i)
    x[i] = lo * std::pow(hi / lo, static_cast<double>(i - 1) / (n - 2));
  x.back() = hi;
  return x;
}

std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  std::vector<double> delta(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    delta[i] = h > 0.0 ? (y[i + 1] - y[i]) / h : 0.0;
  }
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // clamp endpoint slopes to preserve monotonicity
  for (size_t i : {size_t{0}, n - 1}) {
    const double del = (i == 0) ? delta[0] : delta[n - 2];
    if (d[i] * del <= 0.0)
      d[i] = 0.0;
    else if (std::abs(d[i]) > 3.0 * std::abs(del))
      d[i] = 3.0 * del;
  }
  return d;
}

InverseCdf::InverseCdf(const std::function<double(double)>& density,
                       std::vector<double> nodes)
    : x_(std::move(nodes)) {
  const size_t n = x_.size();
  if (n < 2) throw std::invalid_argument("InverseCdf: need at least 2 nodes");
  std::vector<double> mass(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    // composite Simpson with 8 panels per node interval
    const double a = x_[i], b = x_[i + 1];
    const int panels = 8;
    const double h = (b - a) / (2 * panels);
    double s = density(a) + density(b);
    for (int j = 1; j < 2 * panels; ++j) s += density(a + j * h) * (j % 2 ? 4.0 : 2.0);
    mass[i + 1] = mass[i] + s * h / 3.0;
  }
  total_mass_ = mass.back();
  if (!(total_mass_ > 0.0) || !std::isfinite(total_mass_))
    throw std::runtime_error("InverseCdf: density has non-positive or non-finite mass");
  cdf_.resize(n);
  for (size_t i = 0; i < n; ++i) cdf_[i] = mass[i] / total_mass_;
  cdf_.back() = 1.0;
  // strictly increasing CDF is required by the inverse interpolant; merge
  // flat stretches by nudging (they carry no probability anyway)
  for (size_t i = 1; i < n; ++i)
    if (cdf_[i] <= cdf_[i - 1])
      cdf_[i] = std::nextafter(cdf_[i - 1], 2.0);
  slope_ = pchip_slopes(cdf_, x_);
}

double InverseCdf::sample(double u) const {
  if (u <= cdf_.front()) return x_.front();
  if (u >= 1.0) return x_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const size_t i = static_cast<size_t>(it - cdf_.begin()) - 1;
  const double h = cdf_[i + 1] - cdf_[i];
  const double t = (u - cdf_[i]) / h;
  const double y0 = x_[i], y1 = x_[i + 1];
  const double m0 = slope_[i] * h, m1 = slope_[i + 1] * h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
}

}  // namespace klslab

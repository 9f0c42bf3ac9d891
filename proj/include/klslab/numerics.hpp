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

#ifndef KLSLAB_NUMERICS_HPP
#define KLSLAB_NUMERICS_HPP

#include <functional>
#include <vector>

namespace klslab {

/// Adaptive Simpson quadrature on [a, b] to a relative tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rtol = 1e-10, int max_depth = 50);

/// Maximizer of a concave function on [a, b] (golden section).
double concave_argmax(const std::function<double(double)>& f, double a, double b,
                      double xtol = 1e-9);

/// Tabulated inverse CDF for an unnormalized nonnegative density given by
/// its values at strictly increasing nodes. The CDF is integrated with
/// Simpson panels (each node interval subdivided) and inverted through a
/// monotone cubic (Fritsch-Carlson) interpolant of position vs. mass.
class InverseCdf {
 public:
  /// density is evaluated wherever panel subdivision needs it.
  InverseCdf(const std::function<double(double)>& density, std::vector<double> nodes);

  /// Quantile of u in [0, 1).
  double sample(double u) const;

  /// Unnormalized total mass over the tabulated support.
  double total_mass() const { return total_mass_; }

 private:
  std::vector<double> x_;      // nodes
  std::vector<double> cdf_;    // normalized CDF at nodes
  std::vector<double> slope_;  // monotone slopes of x as a function of cdf
  double total_mass_ = 0.0;
};

/// Node layouts for CDF tables.
std::vector<double> uniform_nodes(double lo, double hi, int n);
/// 0 followed by log-spaced nodes from hi*span_ratio to hi.
std::vector<double> log_nodes_from_zero(double hi, int n, double span_ratio = 1e-6);

/// Monotone cubic slopes (Fritsch-Carlson) for data (x_i, y_i), x strictly
/// increasing, y non-decreasing.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace klslab

#endif  // KLSLAB_NUMERICS_HPP

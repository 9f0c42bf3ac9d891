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

#ifndef KLSLAB_BODY_HPP
#define KLSLAB_BODY_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace klslab {

enum class BodyFamily { LpBall, Hypercube, Simplex, Product, Revolution, Dilated, Generic };

std::string to_string(BodyFamily f);

class RevolutionBody;

/// A convex body with 0 in its interior, represented through its gauge
/// (Minkowski functional). The gauge is positively homogeneous and
/// subadditive; gauge(x) <= 1 iff x lies in the body. Instances are
/// immutable and cheap to copy.
class ConvexBody {
 public:
  /// Unit lp ball, p >= 1 (p = inf gives the hypercube [-1,1]^n).
  static ConvexBody lp_ball(int n, double p);
  static ConvexBody hypercube(int n);
  /// Regular simplex with unit circumradius, barycenter at the origin.
  static ConvexBody simplex(int n);
  static ConvexBody product(std::vector<ConvexBody> factors);
  /// Body given only by a membership oracle; the gauge is recovered by
  /// bisection. log_volume may be NaN when unknown.
  static ConvexBody generic(int n, std::function<bool(std::span<const double>)> member,
                            double inner_radius, double bounding_radius, bool symmetric,
                            double log_volume);

  int dim() const;
  BodyFamily family() const;
  double gauge(std::span<const double> x) const;
  bool contains(std::span<const double> x) const;
  double log_volume() const;
  double bounding_radius() const;
  double inner_radius() const;
  bool symmetric() const;

  /// Gradient of the gauge at x (defined a.e.). Returns false when only a
  /// finite-difference gradient is available (Generic bodies).
  bool gauge_gradient(std::span<const double> x, std::span<double> out) const;

  /// True when x lies within dist (relative) of the gauge's singular set
  /// (lp axes for p=1/inf, facet ridges of polytopes). Smooth families
  /// always return false.
  bool near_gauge_singularity(std::span<const double> x, double dist = 1e-8) const;

  double lp_exponent() const;                  // LpBall / Hypercube
  double dilation() const;                     // Dilated
  const ConvexBody& dilation_base() const;     // Dilated
  const std::vector<ConvexBody>& factors() const;  // Product
  const RevolutionBody& revolution() const;        // Revolution
  /// Row-major (n+1) x n vertex matrix of the simplex.
  const std::vector<double>& simplex_vertices() const;

  std::string describe() const;
  nlohmann::json to_json() const;
  static ConvexBody from_json(const nlohmann::json& j);
  /// Shortform: "lp:N:P", "lp:P", "cube[:N]", "simplex[:N]", "cone[:N]",
  /// "cylinder[:N]", "semicircle[:N]", "parabola[:N]". Forms without N
  /// stay dimension-generic until with_dim().
  static nlohmann::json shortform_to_json(const std::string& s);
  /// Instantiate a (possibly dimension-generic) descriptor at dimension n.
  static ConvexBody from_descriptor(const nlohmann::json& j, int n = 0);

  friend ConvexBody dilate(const ConvexBody& body, double lambda);

 private:
  struct Impl;
  explicit ConvexBody(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend class RevolutionBody;
};

ConvexBody dilate(const ConvexBody& body, double lambda);

/// Body of revolution K = {(t, x) : t in [t_lo, t_hi], gauge_base(x) <= R(t)}
/// for a concave nonnegative radius profile R.
class RevolutionBody {
 public:
  /// Throws std::invalid_argument when the profile fails the sampled
  /// concavity / nonnegativity validation (1000 random midpoint triples,
  /// tolerance 1e-9).
  RevolutionBody(double t_lo, double t_hi, std::function<double(double)> radius,
                 ConvexBody base, std::function<double(double)> radius_prime = nullptr,
                 std::string catalog_tag = {});

  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double radius(double t) const { return radius_(t); }
  double radius_prime(double t) const;  // supplied derivative or central FD
  const ConvexBody& base() const { return base_; }
  int total_dim() const;
  double max_radius() const { return max_radius_; }
  double log_volume() const { return log_volume_; }
  const std::string& catalog_tag() const { return catalog_tag_; }

  bool contains(std::span<const double> z) const;  // z = (t, x)

  /// Embed as a ConvexBody (family Revolution); gauge by bisection.
  ConvexBody as_body() const;

  // catalog shapes over an l2-ball cross-section
  static RevolutionBody cylinder(int base_dim);    // [-1,1], R = 1
  static RevolutionBody cone(int base_dim);        // R(t) = t_hi - t, barycentered
  static RevolutionBody semicircle(int base_dim);  // R(t) = sqrt(1-t^2)
  static RevolutionBody parabola(int base_dim);    // R(t) = 1 - t^2

 private:
  double t_lo_, t_hi_;
  std::function<double(double)> radius_;
  std::function<double(double)> radius_prime_;
  ConvexBody base_;
  double max_radius_ = 0.0;
  double log_volume_ = 0.0;
  std::string catalog_tag_;
};

/// Gauge by bisection of a membership oracle over
/// [|x|/bounding_radius, |x|/inner_radius], relative tolerance 1e-12.
double bisection_gauge(const std::function<bool(std::span<const double>)>& member,
                       std::span<const double> x, double inner_radius,
                       double bounding_radius);

}  // namespace klslab

#endif  // KLSLAB_BODY_HPP

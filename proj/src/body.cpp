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

#include "klslab/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "klslab/linalg.hpp"
#include "klslab/numerics.hpp"
#include "klslab/rng.hpp"

namespace klslab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_dim(int expect, size_t got, const char* where) {
  if (static_cast<size_t>(expect) != got)
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
}
}  // namespace

std::string to_string(BodyFamily f) {
  switch (f) {
    case BodyFamily::LpBall: return "lp";
    case BodyFamily::Hypercube: return "cube";
    case BodyFamily::Simplex: return "simplex";
    case BodyFamily::Product: return "product";
    case BodyFamily::Revolution: return "revolution";
    case BodyFamily::Dilated: return "dilated";
    case BodyFamily::Generic: return "generic";
  }
  return "?";
}

struct ConvexBody::Impl {
  BodyFamily family = BodyFamily::Generic;
  int dim = 0;
  double log_volume = kNaN;
  double inner_radius = 0.0;
  double bounding_radius = 0.0;
  bool symmetric = false;

  double p = 0.0;                            // LpBall
  std::vector<double> vertices;              // Simplex, (n+1) x n row-major
  std::vector<ConvexBody> factors;           // Product
  double lambda = 1.0;                       // Dilated
  std::shared_ptr<const ConvexBody> base;    // Dilated
  std::shared_ptr<const RevolutionBody> rev; // Revolution
  std::function<bool(std::span<const double>)> member;  // Generic
};

// ---------------------------------------------------------------------------
// factories

ConvexBody ConvexBody::lp_ball(int n, double p) {
  if (n < 1) throw std::invalid_argument("lp_ball: n must be >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_ball: p < 1 is not convex");
  auto impl = std::make_shared<Impl>();
  impl->dim = n;
  impl->symmetric = true;
  if (std::isinf(p)) {
    impl->family = BodyFamily::Hypercube;
    impl->p = kInf;
    impl->log_volume = n * std::log(2.0);
    impl->inner_radius = 1.0;
    impl->bounding_radius = std::sqrt(static_cast<double>(n));
  } else {
    impl->family = BodyFamily::LpBall;
    impl->p = p;
    impl->log_volume = n * std::log(2.0) + n * std::lgamma(1.0 + 1.0 / p) -
                       std::lgamma(1.0 + n / p);
    const double cross = std::pow(static_cast<double>(n), 0.5 - 1.0 / p);
    impl->inner_radius = std::min(1.0, cross);
    impl->bounding_radius = std::max(1.0, cross);
  }
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::hypercube(int n) { return lp_ball(n, kInf); }

ConvexBody ConvexBody::simplex(int n) {
  if (n < 1) throw std::invalid_argument("simplex: n must be >= 1");
  auto impl = std::make_shared<Impl>();
  impl->family = BodyFamily::Simplex;
  impl->dim = n;
  impl->symmetric = (n == 1);  // the 1-d simplex is the interval [-1, 1]
  impl->vertices.assign(static_cast<size_t>(n + 1) * n, 0.0);
  const double invsqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) impl->vertices[j] = invsqrt_n;
  const double diag = std::sqrt(1.0 + 1.0 / n);
  const double shift = (std::sqrt(n + 1.0) + 1.0) / (n * std::sqrt(static_cast<double>(n)));
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < n; ++j)
      impl->vertices[static_cast<size_t>(i) * n + j] = (j == i - 1 ? diag : 0.0) - shift;
  // remove rounding drift so the barycenter is exactly the accumulated mean
  for (int j = 0; j < n; ++j) {
    double m = 0.0;
    for (int i = 0; i <= n; ++i) m += impl->vertices[static_cast<size_t>(i) * n + j];
    m /= (n + 1);
    for (int i = 0; i <= n; ++i) impl->vertices[static_cast<size_t>(i) * n + j] -= m;
  }
  impl->log_volume = 0.5 * n * (std::log(n + 1.0) - std::log(static_cast<double>(n))) +
                     0.5 * std::log(n + 1.0) - std::lgamma(n + 1.0);
  impl->inner_radius = 1.0 / n;
  impl->bounding_radius = 1.0;
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::product(std::vector<ConvexBody> factors) {
  if (factors.empty()) throw std::invalid_argument("product: no factors");
  auto impl = std::make_shared<Impl>();
  impl->family = BodyFamily::Product;
  impl->symmetric = true;
  impl->log_volume = 0.0;
  double bound2 = 0.0;
  impl->inner_radius = kInf;
  for (const auto& f : factors) {
    impl->dim += f.dim();
    impl->log_volume += f.log_volume();
    impl->symmetric = impl->symmetric && f.symmetric();
    bound2 += f.bounding_radius() * f.bounding_radius();
    impl->inner_radius = std::min(impl->inner_radius, f.inner_radius());
  }
  impl->bounding_radius = std::sqrt(bound2);
  impl->factors = std::move(factors);
  return ConvexBody(std::move(impl));
}

ConvexBody ConvexBody::generic(int n, std::function<bool(std::span<const double>)> member,
                               double inner_radius, double bounding_radius, bool symmetric,
                               double log_volume) {
  if (n < 1) throw std::invalid_argument("generic: n must be >= 1");
  if (!(inner_radius > 0.0) || !(bounding_radius >= inner_radius))
    throw std::invalid_argument("generic: need 0 < inner_radius <= bounding_radius");
  auto impl = std::make_shared<Impl>();
  impl->family = BodyFamily::Generic;
  impl->dim = n;
  impl->member = std::move(member);
  impl->inner_radius = inner_radius;
  impl->bounding_radius = bounding_radius;
  impl->symmetric = symmetric;
  impl->log_volume = log_volume;
  return ConvexBody(std::move(impl));
}

ConvexBody dilate(const ConvexBody& body, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be > 0");
  auto impl = std::make_shared<ConvexBody::Impl>();
  impl->family = BodyFamily::Dilated;
  impl->dim = body.dim();
  impl->lambda = lambda;
  impl->base = std::make_shared<const ConvexBody>(body);
  impl->log_volume = body.log_volume() + body.dim() * std::log(lambda);
  impl->inner_radius = body.inner_radius() * lambda;
  impl->bounding_radius = body.bounding_radius() * lambda;
  impl->symmetric = body.symmetric();
  return ConvexBody(std::move(impl));
}

// ---------------------------------------------------------------------------
// accessors

int ConvexBody::dim() const { return impl_->dim; }
BodyFamily ConvexBody::family() const { return impl_->family; }
double ConvexBody::log_volume() const { return impl_->log_volume; }
double ConvexBody::bounding_radius() const { return impl_->bounding_radius; }
double ConvexBody::inner_radius() const { return impl_->inner_radius; }
bool ConvexBody::symmetric() const { return impl_->symmetric; }
double ConvexBody::lp_exponent() const { return impl_->p; }
double ConvexBody::dilation() const { return impl_->lambda; }
const ConvexBody& ConvexBody::dilation_base() const { return *impl_->base; }
const std::vector<ConvexBody>& ConvexBody::factors() const { return impl_->factors; }
const RevolutionBody& ConvexBody::revolution() const { return *impl_->rev; }
const std::vector<double>& ConvexBody::simplex_vertices() const { return impl_->vertices; }

// ---------------------------------------------------------------------------
// gauge

double bisection_gauge(const std::function<bool(std::span<const double>)>& member,
                       std::span<const double> x, double inner_radius,
                       double bounding_radius) {
  const double nx = norm(x);
  if (nx == 0.0) return 0.0;
  std::vector<double> y(x.size());
  auto member_at = [&](double lambda) {
    for (size_t i = 0; i < x.size(); ++i) y[i] = x[i] / lambda;
    return member(y);
  };
  double hi = nx / inner_radius;
  double lo = nx / bounding_radius;
  for (int k = 0; k < 90 && !member_at(hi); ++k) hi *= 2.0;
  if (!member_at(hi)) return kInf;  // direction never enters the body
  for (int k = 0; k < 90 && member_at(lo); ++k) {
    hi = lo;
    lo *= 0.5;
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (member_at(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double ConvexBody::gauge(std::span<const double> x) const {
  const Impl& im = *impl_;
  require_dim(im.dim, x.size(), "gauge");
  switch (im.family) {
    case BodyFamily::LpBall: {
      const double p = im.p;
      if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
      }
      if (p == 2.0) return norm(x);
      double mx = 0.0;
      for (double v : x) mx = std::max(mx, std::abs(v));
      if (mx == 0.0) return 0.0;
      double s = 0.0;  // scale by the max coordinate to dodge overflow
      for (double v : x) s += std::pow(std::abs(v) / mx, p);
      return mx * std::pow(s, 1.0 / p);
    }
    case BodyFamily::Hypercube: {
      double mx = 0.0;
      for (double v : x) mx = std::max(mx, std::abs(v));
      return mx;
    }
    case BodyFamily::Simplex: {
      const int n = im.dim;
      double best = 0.0;
      for (int i = 0; i <= n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d -= im.vertices[static_cast<size_t>(i) * n + j] * x[j];
        best = std::max(best, d);
      }
      return n * best;
    }
    case BodyFamily::Product: {
      double g = 0.0;
      size_t off = 0;
      for (const auto& f : im.factors) {
        g = std::max(g, f.gauge(x.subspan(off, f.dim())));
        off += f.dim();
      }
      return g;
    }
    case BodyFamily::Dilated:
      return im.base->gauge(x) / im.lambda;
    case BodyFamily::Revolution:
    case BodyFamily::Generic: {
      auto member = [this](std::span<const double> y) { return this->contains(y); };
      return bisection_gauge(member, x, im.inner_radius, im.bounding_radius);
    }
  }
  return kNaN;
}

bool ConvexBody::contains(std::span<const double> x) const {
  const Impl& im = *impl_;
  require_dim(im.dim, x.size(), "contains");
  switch (im.family) {
    case BodyFamily::Revolution:
      return im.rev->contains(x);
    case BodyFamily::Generic:
      return im.member(x);
    case BodyFamily::Product: {
      size_t off = 0;
      for (const auto& f : im.factors) {
        if (!f.contains(x.subspan(off, f.dim()))) return false;
        off += f.dim();
      }
      return true;
    }
    case BodyFamily::Dilated: {
      std::vector<double> y(x.begin(), x.end());
      for (double& v : y) v /= im.lambda;
      return im.base->contains(y);
    }
    default:
      return gauge(x) <= 1.0;
  }
}

bool ConvexBody::gauge_gradient(std::span<const double> x, std::span<double> out) const {
  const Impl& im = *impl_;
  require_dim(im.dim, x.size(), "gauge_gradient");
  require_dim(im.dim, out.size(), "gauge_gradient");
  switch (im.family) {
    case BodyFamily::LpBall: {
      const double p = im.p;
      if (p == 1.0) {
        for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] >= 0.0 ? 1.0 : -1.0;
        return true;
      }
      const double g = gauge(x);
      if (g == 0.0) return false;
      for (size_t i = 0; i < x.size(); ++i) {
        const double s = x[i] >= 0.0 ? 1.0 : -1.0;
        out[i] = s * std::pow(std::abs(x[i]) / g, p - 1.0);
      }
      return true;
    }
    case BodyFamily::Hypercube: {
      size_t jmax = 0;
      double mx = -1.0;
      for (size_t i = 0; i < x.size(); ++i) {
        if (std::abs(x[i]) > mx) {
          mx = std::abs(x[i]);
          jmax = i;
        }
        out[i] = 0.0;
      }
      out[jmax] = x[jmax] >= 0.0 ? 1.0 : -1.0;
      return true;
    }
    case BodyFamily::Simplex: {
      const int n = im.dim;
      int best_i = 0;
      double best = -kInf;
      for (int i = 0; i <= n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d -= im.vertices[static_cast<size_t>(i) * n + j] * x[j];
        if (d > best) {
          best = d;
          best_i = i;
        }
      }
      for (int j = 0; j < n; ++j)
        out[j] = -n * im.vertices[static_cast<size_t>(best_i) * n + j];
      return true;
    }
    case BodyFamily::Product: {
      size_t off = 0;
      size_t best_off = 0;
      const ConvexBody* best_f = nullptr;
      double best_g = -kInf;
      for (const auto& f : im.factors) {
        const double g = f.gauge(x.subspan(off, f.dim()));
        if (g > best_g) {
          best_g = g;
          best_f = &f;
          best_off = off;
        }
        off += f.dim();
      }
      std::fill(out.begin(), out.end(), 0.0);
      return best_f->gauge_gradient(x.subspan(best_off, best_f->dim()),
                                    out.subspan(best_off, best_f->dim()));
    }
    case BodyFamily::Dilated: {
      if (!im.base->gauge_gradient(x, out)) return false;
      for (double& v : out) v /= im.lambda;
      return true;
    }
    case BodyFamily::Revolution: {
      // boundary-normal formula: grad g(z) = grad F(w) / <grad F(w), w>
      // at w = z / g(z), where F is the active constraint of the body.
      const RevolutionBody& rev = *im.rev;
      const double g = gauge(x);
      if (!(g > 0.0) || !std::isfinite(g)) return false;
      std::vector<double> w(x.begin(), x.end());
      for (double& v : w) v /= g;
      const double tau = w[0];
      const auto xi = std::span<const double>(w).subspan(1);
      const double slack_hi = rev.t_hi() - tau;
      const double slack_lo = tau - rev.t_lo();
      const double slack_side = rev.radius(tau) - rev.base().gauge(xi);
      std::vector<double> gf(w.size(), 0.0);
      if (slack_side <= slack_hi && slack_side <= slack_lo) {
        gf[0] = -rev.radius_prime(tau);
        if (!rev.base().gauge_gradient(xi, std::span<double>(gf).subspan(1))) return false;
      } else if (slack_hi < slack_lo) {
        gf[0] = 1.0;
      } else {
        gf[0] = -1.0;
      }
      const double denom = dot(gf, w);
      if (!(std::abs(denom) > 1e-300)) return false;
      for (size_t i = 0; i < out.size(); ++i) out[i] = gf[i] / denom;
      return true;
    }
    case BodyFamily::Generic:
      return false;
  }
  return false;
}

bool ConvexBody::near_gauge_singularity(std::span<const double> x, double dist) const {
  const Impl& im = *impl_;
  const double scale = dist * (norm(x) + 1.0);
  switch (im.family) {
    case BodyFamily::LpBall:
      if (norm(x) < scale) return true;  // gradient formula divides by the gauge
      if (im.p >= 2.0) return false;     // C^1 away from the origin
      for (double v : x)                 // p in [1,2): axes are non-smooth
        if (std::abs(v) < scale) return true;
      return false;
    case BodyFamily::Hypercube: {
      // ridge: two coordinates tie for the max
      double m1 = -1.0, m2 = -1.0;
      for (double v : x) {
        const double a = std::abs(v);
        if (a > m1) {
          m2 = m1;
          m1 = a;
        } else if (a > m2) {
          m2 = a;
        }
      }
      return m1 - m2 < scale;
    }
    case BodyFamily::Simplex: {
      const int n = im.dim;
      double b1 = -kInf, b2 = -kInf;
      for (int i = 0; i <= n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d -= im.vertices[static_cast<size_t>(i) * n + j] * x[j];
        if (d > b1) {
          b2 = b1;
          b1 = d;
        } else if (d > b2) {
          b2 = d;
        }
      }
      return b1 - b2 < scale;
    }
    case BodyFamily::Product: {
      double g1 = -kInf, g2 = -kInf;
      size_t off = 0;
      bool inner = false;
      for (const auto& f : im.factors) {
        const double g = f.gauge(x.subspan(off, f.dim()));
        inner = inner || f.near_gauge_singularity(x.subspan(off, f.dim()), dist);
        if (g > g1) {
          g2 = g1;
          g1 = g;
        } else if (g > g2) {
          g2 = g;
        }
        off += f.dim();
      }
      return inner || g1 - g2 < scale;
    }
    case BodyFamily::Dilated:
      return im.base->near_gauge_singularity(x, dist);
    case BodyFamily::Revolution: {
      const RevolutionBody& rev = *im.rev;
      const double g = gauge(x);
      if (!(g > 0.0) || !std::isfinite(g)) return true;
      std::vector<double> w(x.begin(), x.end());
      for (double& v : w) v /= g;
      const double s_hi = rev.t_hi() - w[0];
      const double s_lo = w[0] - rev.t_lo();
      const double s_side = rev.radius(w[0]) - rev.base().gauge(std::span<const double>(w).subspan(1));
      double m1 = std::min({s_hi, s_lo, s_side});
      double m2 = kInf;
      for (double s : {s_hi, s_lo, s_side})
        if (s > m1 && s < m2) m2 = s;
      return (m2 - m1 < scale) ||
             rev.base().near_gauge_singularity(std::span<const double>(w).subspan(1), dist);
    }
    case BodyFamily::Generic:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// revolution bodies

RevolutionBody::RevolutionBody(double t_lo, double t_hi, std::function<double(double)> radius,
                               ConvexBody base, std::function<double(double)> radius_prime,
                               std::string catalog_tag)
    : t_lo_(t_lo),
      t_hi_(t_hi),
      radius_(std::move(radius)),
      radius_prime_(std::move(radius_prime)),
      base_(std::move(base)),
      catalog_tag_(std::move(catalog_tag)) {
  if (!(t_lo_ < t_hi_)) throw std::invalid_argument("revolution: need t_lo < t_hi");
  RngStream rng(0x726576u, 0);  // fixed stream: validation must be reproducible
  for (int k = 0; k < 1000; ++k) {
    double a = rng.uniform(t_lo_, t_hi_);
    double b = rng.uniform(t_lo_, t_hi_);
    if (a > b) std::swap(a, b);
    const double ra = radius_(a), rb = radius_(b), rm = radius_(0.5 * (a + b));
    if (ra < 0.0 || rb < 0.0)
      throw std::invalid_argument("revolution: radius profile is negative");
    const double scale = std::abs(ra) + std::abs(rb) + 1.0;
    if (rm < 0.5 * (ra + rb) - 1e-9 * scale)
      throw std::invalid_argument("revolution: radius profile is not concave");
    max_radius_ = std::max({max_radius_, ra, rb, rm});
  }
  max_radius_ = std::max({max_radius_, radius_(t_lo_), radius_(t_hi_)});
  const int n = base_.dim();
  const double integral = adaptive_simpson(
      [&](double t) { return std::pow(radius_(t), n); }, t_lo_, t_hi_, 1e-10);
  if (!(integral > 0.0))
    throw std::invalid_argument("revolution: profile encloses zero volume");
  log_volume_ = base_.log_volume() + std::log(integral);
}

double RevolutionBody::radius_prime(double t) const {
  if (radius_prime_) return radius_prime_(t);
  const double h = 1e-7 * (std::abs(t) + t_hi_ - t_lo_);
  const double a = std::max(t - h, t_lo_), b = std::min(t + h, t_hi_);
  return (radius_(b) - radius_(a)) / (b - a);
}

int RevolutionBody::total_dim() const { return 1 + base_.dim(); }

bool RevolutionBody::contains(std::span<const double> z) const {
  require_dim(total_dim(), z.size(), "revolution contains");
  const double t = z[0];
  if (t < t_lo_ || t > t_hi_) return false;
  const double r = radius_(t);
  return base_.gauge(z.subspan(1)) <= r;
}

ConvexBody RevolutionBody::as_body() const {
  auto impl = std::make_shared<ConvexBody::Impl>();
  impl->family = BodyFamily::Revolution;
  impl->dim = total_dim();
  impl->rev = std::make_shared<const RevolutionBody>(*this);
  impl->log_volume = log_volume_;
  impl->symmetric = false;
  const double t_abs = std::max(std::abs(t_lo_), std::abs(t_hi_));
  const double side = max_radius_ * base_.bounding_radius();
  impl->bounding_radius = std::sqrt(t_abs * t_abs + side * side);
  // inner radius: largest r with sqrt(r^2 - t^2) <= inner_base * R(t) for
  // all |t| <= r, found by bisection with a grid feasibility check
  if (t_lo_ < 0.0 && t_hi_ > 0.0) {
    const double dt = std::min(-t_lo_, t_hi_);
    auto feasible = [&](double r) {
      for (int k = 0; k <= 128; ++k) {
        const double t = -r + 2.0 * r * k / 128.0;
        const double cross = std::sqrt(std::max(0.0, r * r - t * t));
        if (cross > base_.inner_radius() * radius_(t)) return false;
      }
      return true;
    };
    double lo = 0.0, hi = dt;
    if (feasible(hi)) {
      lo = hi;
    } else {
      for (int it = 0; it < 50; ++it) {
        const double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
      }
    }
    impl->inner_radius = 0.999 * lo;  // shave the grid-check slack
  } else {
    impl->inner_radius = 0.0;  // 0 not interior: gauge may be infinite
  }
  if (impl->inner_radius <= 0.0)
    impl->inner_radius = 1e-9;  // keep bisection brackets finite; gauge of
                                // unreachable directions still reports inf
  return ConvexBody(std::move(impl));
}

RevolutionBody RevolutionBody::cylinder(int base_dim) {
  return RevolutionBody(
      -1.0, 1.0, [](double) { return 1.0; }, ConvexBody::lp_ball(base_dim, 2.0),
      [](double) { return 0.0; }, "cylinder");
}

RevolutionBody RevolutionBody::cone(int base_dim) {
  // linear profile placed so the barycenter sits at t = 0
  const double hi = (base_dim + 1.0) / (base_dim + 2.0);
  return RevolutionBody(
      hi - 1.0, hi, [hi](double t) { return hi - t; }, ConvexBody::lp_ball(base_dim, 2.0),
      [](double) { return -1.0; }, "cone");
}

RevolutionBody RevolutionBody::semicircle(int base_dim) {
  return RevolutionBody(
      -1.0, 1.0, [](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); },
      ConvexBody::lp_ball(base_dim, 2.0),
      [](double t) {
        const double s = std::sqrt(std::max(1e-300, 1.0 - t * t));
        return -t / s;
      },
      "semicircle");
}

RevolutionBody RevolutionBody::parabola(int base_dim) {
  return RevolutionBody(
      -1.0, 1.0, [](double t) { return 1.0 - t * t; }, ConvexBody::lp_ball(base_dim, 2.0),
      [](double t) { return -2.0 * t; }, "parabola");
}

// ---------------------------------------------------------------------------
// descriptors

std::string ConvexBody::describe() const {
  const Impl& im = *impl_;
  char buf[128];
  switch (im.family) {
    case BodyFamily::LpBall:
      std::snprintf(buf, sizeof buf, "lp:%d:%g", im.dim, im.p);
      return buf;
    case BodyFamily::Hypercube:
      std::snprintf(buf, sizeof buf, "cube:%d", im.dim);
      return buf;
    case BodyFamily::Simplex:
      std::snprintf(buf, sizeof buf, "simplex:%d", im.dim);
      return buf;
    case BodyFamily::Product: {
      std::string s = "product(";
      for (size_t i = 0; i < im.factors.size(); ++i)
        s += (i ? "," : "") + im.factors[i].describe();
      return s + ")";
    }
    case BodyFamily::Dilated:
      std::snprintf(buf, sizeof buf, "dilated:%g:", im.lambda);
      return buf + im.base->describe();
    case BodyFamily::Revolution: {
      const std::string tag =
          im.rev->catalog_tag().empty() ? "revolution" : im.rev->catalog_tag();
      std::snprintf(buf, sizeof buf, "%s:%d", tag.c_str(), im.dim);
      return buf;
    }
    case BodyFamily::Generic:
      std::snprintf(buf, sizeof buf, "generic:%d", im.dim);
      return buf;
  }
  return "?";
}

nlohmann::json ConvexBody::to_json() const {
  const Impl& im = *impl_;
  nlohmann::json j;
  switch (im.family) {
    case BodyFamily::LpBall:
      j = {{"family", "lp"}, {"n", im.dim}, {"p", im.p}};
      break;
    case BodyFamily::Hypercube:
      j = {{"family", "cube"}, {"n", im.dim}};
      break;
    case BodyFamily::Simplex:
      j = {{"family", "simplex"}, {"n", im.dim}};
      break;
    case BodyFamily::Product: {
      j["family"] = "product";
      for (const auto& f : im.factors) j["factors"].push_back(f.to_json());
      break;
    }
    case BodyFamily::Dilated:
      j = {{"family", "dilated"}, {"lambda", im.lambda}, {"base", im.base->to_json()}};
      break;
    case BodyFamily::Revolution: {
      if (im.rev->catalog_tag().empty())
        throw std::invalid_argument("to_json: non-catalog revolution body");
      j = {{"family", "revolution"},
           {"radius", im.rev->catalog_tag()},
           {"n", im.dim},
           {"base", im.rev->base().to_json()}};
      break;
    }
    case BodyFamily::Generic:
      throw std::invalid_argument("to_json: generic bodies have no descriptor");
  }
  return j;
}

namespace {

double parse_p(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
    return std::stod(s);
  }
  return j.get<double>();
}

ConvexBody catalog_revolution(const std::string& tag, int base_dim) {
  if (tag == "constant" || tag == "cylinder") return RevolutionBody::cylinder(base_dim).as_body();
  if (tag == "linear" || tag == "cone") return RevolutionBody::cone(base_dim).as_body();
  if (tag == "semicircle") return RevolutionBody::semicircle(base_dim).as_body();
  if (tag == "parabola" || tag == "truncated-parabola")
    return RevolutionBody::parabola(base_dim).as_body();
  throw std::invalid_argument("unknown revolution radius profile: " + tag);
}

}  // namespace

ConvexBody ConvexBody::from_json(const nlohmann::json& j) { return from_descriptor(j, 0); }

ConvexBody ConvexBody::from_descriptor(const nlohmann::json& j, int n_hint) {
  const std::string family = j.at("family").get<std::string>();
  const int n = j.contains("n") ? j.at("n").get<int>() : n_hint;
  if (family != "product" && n < 1)
    throw std::invalid_argument("body descriptor: missing dimension");
  if (family == "lp") return lp_ball(n, parse_p(j.at("p")));
  if (family == "cube") return hypercube(n);
  if (family == "simplex") return simplex(n);
  if (family == "dilated")
    return dilate(from_descriptor(j.at("base"), n_hint), j.at("lambda").get<double>());
  if (family == "product") {
    std::vector<ConvexBody> fs;
    for (const auto& f : j.at("factors")) fs.push_back(from_descriptor(f, n_hint));
    return product(std::move(fs));
  }
  if (family == "revolution") {
    const std::string tag = j.at("radius").get<std::string>();
    if (j.contains("base")) {
      // explicit base: n counts the axis plus the base dimension
      ConvexBody base = from_descriptor(j.at("base"), n > 1 ? n - 1 : 0);
      if (base.dim() != n - 1)
        throw std::invalid_argument("revolution descriptor: base dim must be n-1");
      if (tag == "constant" || tag == "cylinder") {
        return RevolutionBody(-1.0, 1.0, [](double) { return 1.0; }, base,
                              [](double) { return 0.0; }, "cylinder")
            .as_body();
      }
      if (tag == "linear" || tag == "cone") {
        const double hi = (base.dim() + 1.0) / (base.dim() + 2.0);
        return RevolutionBody(hi - 1.0, hi, [hi](double t) { return hi - t; }, base,
                              [](double) { return -1.0; }, "cone")
            .as_body();
      }
      if (tag == "semicircle") {
        return RevolutionBody(-1.0, 1.0,
                              [](double t) { return std::sqrt(std::max(0.0, 1.0 - t * t)); },
                              base, nullptr, "semicircle")
            .as_body();
      }
      if (tag == "parabola" || tag == "truncated-parabola") {
        return RevolutionBody(-1.0, 1.0, [](double t) { return 1.0 - t * t; }, base,
                              [](double t) { return -2.0 * t; }, "parabola")
            .as_body();
      }
      throw std::invalid_argument("unknown revolution radius profile: " + tag);
    }
    return catalog_revolution(tag, n - 1);
  }
  throw std::invalid_argument("unknown body family: " + family);
}

nlohmann::json ConvexBody::shortform_to_json(const std::string& s) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (pos <= s.size()) {
    const size_t c = s.find(':', pos);
    parts.push_back(s.substr(pos, c == std::string::npos ? c : c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  const std::string& fam = parts[0];
  nlohmann::json j;
  auto as_int = [](const std::string& v) { return std::stoi(v); };
  if (fam == "lp" || fam == "l1" || fam == "l2" || fam == "linf") {
    j["family"] = "lp";
    if (fam == "l1") j["p"] = 1.0;
    if (fam == "l2") j["p"] = 2.0;
    if (fam == "linf") j["p"] = "inf";
    if (fam == "lp") {
      if (parts.size() == 2) {
        j["p"] = parts[1] == "inf" ? nlohmann::json("inf") : nlohmann::json(std::stod(parts[1]));
      } else if (parts.size() == 3) {
        j["n"] = as_int(parts[1]);
        j["p"] = parts[2] == "inf" ? nlohmann::json("inf") : nlohmann::json(std::stod(parts[2]));
      } else {
        throw std::invalid_argument("lp shortform: expected lp:P or lp:N:P");
      }
    } else if (parts.size() == 2) {
      j["n"] = as_int(parts[1]);
    }
    return j;
  }
  if (fam == "cube" || fam == "simplex") {
    j["family"] = fam;
    if (parts.size() == 2) j["n"] = as_int(parts[1]);
    return j;
  }
  if (fam == "cone" || fam == "cylinder" || fam == "semicircle" || fam == "parabola") {
    j["family"] = "revolution";
    j["radius"] = fam;
    if (parts.size() == 2) j["n"] = as_int(parts[1]);
    return j;
  }
  throw std::invalid_argument("unknown body shortform: " + s);
}

}  // namespace klslab

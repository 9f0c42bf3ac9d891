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

#ifndef KLSLAB_RNG_HPP
#define KLSLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace klslab {

/// Counter-based pseudo-random stream (splitmix64 core).
///
/// Distinct (seed, stream_id) pairs give statistically independent
/// sequences; equal pairs replay the identical sequence bit-for-bit.
/// The counter records how many raw 64-bit words have been consumed,
/// so a stream snapshot fully describes the provenance of a sample.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {
    key_ = mix(seed ^ mix(stream_id ^ 0x6b79736c614bULL));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  std::uint64_t counter() const noexcept { return counter_; }

  /// Derived stream for an independent sub-sampler. Deterministic in
  /// (seed, stream_id, tag); the child starts with counter 0.
  RngStream child(std::uint64_t tag) const noexcept {
    return RngStream(seed_, mix(stream_id_ + 0x9e3779b97f4a7c15ULL * (tag + 1)));
  }

  std::uint64_t next_u64() noexcept {
    return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  /// Uniform on [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1].
  double uniform_open() noexcept { return 1.0 - uniform(); }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  /// Standard normal (Box-Muller; the spare value is cached).
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double a = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Exponential with rate 1.
  double exponential() noexcept { return -std::log(uniform_open()); }

  /// Gamma(shape, rate) via Marsaglia-Tsang, with the shape<1 boost.
  double gamma(double shape, double rate = 1.0) noexcept {
    if (shape < 1.0) {
      const double u = uniform_open();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  /// chi(k): square root of a chi-squared variable with k d.o.f.
  double chi(double dof) noexcept { return std::sqrt(2.0 * gamma(0.5 * dof)); }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t key_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace klslab

#endif  // KLSLAB_RNG_HPP

/*
 * Copyright 2026 The cbobench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace cbo {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using Index = Eigen::Index;

/// Axis-aligned box [lower, upper] in R^d.
template <typename Scalar>
struct BasicBoxDomain {
  VectorX<Scalar> lower;
  VectorX<Scalar> upper;

  BasicBoxDomain() = default;
  BasicBoxDomain(VectorX<Scalar> lo, VectorX<Scalar> hi)
      : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size() || lower.size() == 0) {
      throw std::invalid_argument("BoxDomain: bounds must be non-empty and of equal length");
    }
    for (Index i = 0; i < lower.size(); ++i) {
      if (!(lower[i] < upper[i])) {
        throw std::invalid_argument("BoxDomain: lower bound must be below upper bound");
      }
    }
  }

  Index dim() const { return lower.size(); }

  VectorX<Scalar> width() const { return upper - lower; }

  VectorX<Scalar> midpoint() const { return (lower + upper) / Scalar(2); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    return x.size() == dim() && (x.array() >= lower.array()).all() &&
           (x.array() <= upper.array()).all();
  }

  /// Maps a point of the box onto [0,1]^d.
  template <typename Derived>
  VectorX<Scalar> to_unit(const Eigen::MatrixBase<Derived>& x) const {
    return ((x - lower).array() / width().array()).matrix();
  }

  /// Inverse of to_unit; results are clamped so rounding never leaves the box.
  template <typename Derived>
  VectorX<Scalar> from_unit(const Eigen::MatrixBase<Derived>& u) const {
    VectorX<Scalar> x = lower + (u.array() * width().array()).matrix();
    return x.cwiseMax(lower).cwiseMin(upper);
  }
};

using BoxDomain = BasicBoxDomain<double>;

/// Mixes a base seed with a stream index (splitmix64 finalizer). Used to
/// derive independent, reproducible substreams, e.g. one per replicate or
/// per optimizer iteration.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// The single random source used across the library. Draws are produced
/// from raw 64-bit mt19937_64 output so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Lemire-style rejection keeps the draw unbiased.
    const std::uint64_t limit = -n % n;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= limit) return r % n;
    }
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cbo

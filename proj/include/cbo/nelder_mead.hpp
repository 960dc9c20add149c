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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cbo/types.hpp"

namespace cbo {

template <typename Scalar>
struct NelderMeadResult {
  VectorX<Scalar> x;
  Scalar value;
  int evaluations;
};

/// Minimizes f over the box [lower, upper] with a Nelder-Mead simplex whose
/// trial points are projected onto the box. Never returns a point worse than
/// the start. Non-finite values are treated as +infinity. Stops when the
/// value spread is below f_tolerance (relative) and the simplex fits in an
/// x_tolerance cube, or after max_evaluations.
template <typename Scalar, typename Function>
NelderMeadResult<Scalar> nelder_mead_box(Function&& f, const VectorX<Scalar>& start,
                                         const VectorX<Scalar>& lower,
                                         const VectorX<Scalar>& upper, Scalar initial_step,
                                         Scalar f_tolerance, Scalar x_tolerance,
                                         int max_evaluations) {
  const Index d = start.size();
  constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();
  int evaluations = 0;
  auto project = [&](VectorX<Scalar> x) { return VectorX<Scalar>(x.cwiseMax(lower).cwiseMin(upper)); };
  auto eval = [&](const VectorX<Scalar>& x) {
    ++evaluations;
    const Scalar v = f(x);
    return std::isfinite(v) ? v : kInf;
  };

  std::vector<VectorX<Scalar>> simplex;
  std::vector<Scalar> values;
  simplex.push_back(project(start));
  values.push_back(eval(simplex.front()));
  for (Index i = 0; i < d; ++i) {
    VectorX<Scalar> v = simplex.front();
    // Step away from the nearer bound so the vertex is never degenerate.
    const Scalar room_up = upper[i] - v[i];
    const Scalar room_down = v[i] - lower[i];
    const Scalar step = std::min(initial_step, std::max(room_up, room_down));
    v[i] += room_up >= room_down ? step : -step;
    simplex.push_back(v);
    values.push_back(eval(v));
  }

  std::vector<Index> order(static_cast<std::size_t>(d + 1));
  while (evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return values[a] < values[b]; });
    const Index best = order.front();
    const Index worst = order.back();
    const Index second_worst = order[order.size() - 2];

    const Scalar spread = values[worst] - values[best];
    Scalar size = 0;
    for (Index i = 0; i <= d; ++i) size = std::max(size, (simplex[i] - simplex[best]).cwiseAbs().maxCoeff());
    if (std::isfinite(spread) && spread <= f_tolerance * (1 + std::abs(values[best])) && size <= x_tolerance) break;
    if (size <= std::numeric_limits<Scalar>::epsilon()) break;

    VectorX<Scalar> centroid = VectorX<Scalar>::Zero(d);
    for (Index i = 0; i <= d; ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= Scalar(d);

    const VectorX<Scalar> reflected = project(centroid + (centroid - simplex[worst]));
    const Scalar fr = eval(reflected);
    if (fr < values[best]) {
      const VectorX<Scalar> expanded = project(centroid + Scalar(2) * (centroid - simplex[worst]));
      const Scalar fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const VectorX<Scalar> contracted =
        outside ? VectorX<Scalar>(centroid + Scalar(0.5) * (reflected - centroid))
                : VectorX<Scalar>(centroid + Scalar(0.5) * (simplex[worst] - centroid));
    const Scalar fc = eval(contracted);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (Index i = 0; i <= d; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + Scalar(0.5) * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }

  const auto it = std::min_element(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(std::distance(values.begin(), it));
  return {simplex[k], values[k], evaluations};
}

}  // namespace cbo

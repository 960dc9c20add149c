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
#include <numbers>

#include "cbo/types.hpp"

namespace cbo {

template <typename Scalar>
Scalar normal_pdf(Scalar z) {
  return std::exp(-Scalar(0.5) * z * z) / std::sqrt(2 * std::numbers::pi_v<Scalar>);
}

/// Phi(z) = erfc(-z / sqrt 2) / 2; erfc keeps full relative accuracy in the
/// lower tail.
template <typename Scalar>
Scalar normal_cdf(Scalar z) {
  return Scalar(0.5) * std::erfc(-z / std::numbers::sqrt2_v<Scalar>);
}

/// Closed-form E[max(0, f_min - Y)] for Y ~ N(mu, sigma^2).
template <typename Scalar>
Scalar expected_improvement(Scalar mu, Scalar sigma, Scalar f_min) {
  const Scalar gap = f_min - mu;
  if (!(sigma > 0)) return std::max(gap, Scalar(0));
  const Scalar z = gap / sigma;
  return std::max(gap * normal_cdf(z) + sigma * normal_pdf(z), Scalar(0));
}

/// Product over constraints of P(c_k <= 0) under independent normal
/// predictions; a zero sigma contributes an exact 0/1 factor.
template <typename DerivedMu, typename DerivedSigma>
typename DerivedMu::Scalar prob_feasible(const Eigen::MatrixBase<DerivedMu>& mu_c,
                                         const Eigen::MatrixBase<DerivedSigma>& sigma_c) {
  using Scalar = typename DerivedMu::Scalar;
  Scalar p = 1;
  for (Index k = 0; k < mu_c.size(); ++k) {
    if (sigma_c[k] > 0) {
      p *= normal_cdf(-mu_c[k] / sigma_c[k]);
    } else if (mu_c[k] > 0) {
      return 0;
    }
  }
  return p;
}

/// Best observed objective so far; for constrained problems, over feasible
/// observations only.
struct Incumbent {
  double f_min = 0.0;
  bool feasible_exists = false;
};

/// Expected feasible improvement. Before any feasible observation exists
/// the score is the probability of feasibility alone.
template <typename Scalar, typename DerivedMu, typename DerivedSigma>
Scalar efi(Scalar mu, Scalar sigma, const Incumbent& incumbent,
           const Eigen::MatrixBase<DerivedMu>& mu_c, const Eigen::MatrixBase<DerivedSigma>& sigma_c) {
  const Scalar pf = prob_feasible(mu_c, sigma_c);
  if (!incumbent.feasible_exists) return pf;
  if (pf == 0) return 0;
  return expected_improvement(mu, sigma, static_cast<Scalar>(incumbent.f_min)) * pf;
}

}  // namespace cbo

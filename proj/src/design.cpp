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

#include "cbo/design.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cbo {

Matrix lhs_design(Index n, const BoxDomain& domain, Rng& rng) {
  if (n < 1) throw std::invalid_argument("lhs_design: n must be positive");
  const Index d = domain.dim();
  Matrix design(n, d);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index k = 0; k < d; ++k) {
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
    }
    const double width = domain.upper[k] - domain.lower[k];
    for (Index i = 0; i < n; ++i) {
      const double u = (static_cast<double>(perm[i]) + rng.uniform()) / static_cast<double>(n);
      design(i, k) = std::min(domain.lower[k] + u * width, domain.upper[k]);
    }
  }
  return design;
}

Matrix lhs_design(Index n, const BoxDomain& domain, std::uint64_t seed) {
  Rng rng(seed);
  return lhs_design(n, domain, rng);
}

}  // namespace cbo

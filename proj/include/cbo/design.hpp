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

#include <cstdint>

#include "cbo/types.hpp"

namespace cbo {

/// Latin hypercube sample of n points in the box, one row per point. Each
/// coordinate places exactly one point in each of the n equal-width strata.
Matrix lhs_design(Index n, const BoxDomain& domain, Rng& rng);

Matrix lhs_design(Index n, const BoxDomain& domain, std::uint64_t seed);

}  // namespace cbo

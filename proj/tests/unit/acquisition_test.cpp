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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cbo/acquisition.hpp"
#include "support/oracles.hpp"

namespace cbo {
namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Index>(v.size()));
  std::copy(v.begin(), v.end(), x.data());
  return x;
}

TEST(NormalFunctions, ReferenceValues) {
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-15);
  EXPECT_NEAR(normal_cdf(-8.0), 6.220960574271786e-16, 1e-26);
  EXPECT_NEAR(normal_cdf(8.0), 1.0, 1e-15);
}

TEST(ExpectedImprovement, Examples) {
  EXPECT_NEAR(expected_improvement(1.0, 1.0, 1.0), 0.3989423, 1e-7);
  EXPECT_EQ(expected_improvement(-2.0, 0.0, 0.0), 2.0);
  EXPECT_EQ(expected_improvement(2.0, 0.0, 0.0), 0.0);
}

TEST(ExpectedImprovement, MatchesMonteCarlo) {
  std::mt19937_64 gen(2024);
  const double cases[][3] = {{0.0, 1.0, 0.0}, {1.0, 0.5, 0.2}, {-0.3, 2.0, 0.4}, {5.0, 1.0, 3.0}};
  for (const auto& c : cases) {
    const auto mc = oracle::improvement_mc(c[0], c[1], c[2], 1'000'000, gen);
    EXPECT_NEAR(expected_improvement(c[0], c[1], c[2]), mc.mean, 3.0 * mc.standard_error);
  }
}

TEST(ExpectedImprovement, Properties) {
  // Grid of 10^3 (mu, sigma, f_min) triples.
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        const double mu = -3.0 + 0.6 * i;
        const double sigma = 0.05 + 0.3 * j;
        const double f_min = -3.0 + 0.6 * k;
        const double ei = expected_improvement(mu, sigma, f_min);
        EXPECT_GE(ei, 0.0);
        EXPECT_GE(ei, std::max(f_min - mu, 0.0));
        EXPECT_GE(expected_improvement(mu, sigma + 0.3, f_min), ei);
        EXPECT_GE(expected_improvement(mu, sigma, f_min + 0.6), ei);
        EXPECT_NEAR(expected_improvement(mu, 1e-12, f_min), std::max(f_min - mu, 0.0), 1e-9);
      }
    }
  }
}

TEST(ProbFeasible, Examples) {
  EXPECT_DOUBLE_EQ(prob_feasible(vec({0.0}), vec({1.0})), 0.5);
  EXPECT_EQ(prob_feasible(vec({-1.0, -1.0}), vec({0.0, 0.0})), 1.0);
  EXPECT_EQ(prob_feasible(vec({1.0}), vec({0.0})), 0.0);
  EXPECT_EQ(prob_feasible(Vector(), Vector()), 1.0);
}

TEST(ProbFeasible, BoundsAndCertainConstraint) {
  for (int i = 0; i < 1000; ++i) {
    const double mu = -4.0 + 8.0 * (i % 100) / 99.0;
    const double sigma = 0.01 + 3.0 * (i / 100) / 9.0;
    const double p = prob_feasible(vec({mu, 0.3}), vec({sigma, 1.1}));
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    EXPECT_EQ(prob_feasible(vec({mu, 0.3, -1.0}), vec({sigma, 1.1, 0.0})), p);
  }
}

TEST(Efi, Examples) {
  const Incumbent inc{0.0, true};
  EXPECT_EQ(efi(-1.0, 1.0, inc, vec({1.0}), vec({0.0})), 0.0);
  const double ei = expected_improvement(-0.5, 0.7, 0.0);
  EXPECT_NEAR(efi(-0.5, 0.7, inc, vec({-50.0, -40.0}), vec({0.1, 0.1})), ei, 1e-15);
  EXPECT_EQ(efi(-0.5, 0.7, inc, Vector(), Vector()), ei);
}

TEST(Efi, FeasibilityFallbackWithoutIncumbent) {
  const Incumbent none{};
  EXPECT_DOUBLE_EQ(efi(-10.0, 1.0, none, vec({0.0}), vec({1.0})), 0.5);
  EXPECT_EQ(efi(-10.0, 1.0, none, vec({2.0}), vec({0.0})), 0.0);
}

}  // namespace
}  // namespace cbo

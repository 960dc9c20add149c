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

#include "cbo/testfuns.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace cbo {
namespace {

using std::numbers::pi;
using Formula = Evaluation (*)(const Eigen::Ref<const Vector>&);

Vector constraints(std::initializer_list<double> values) {
  Vector c(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) c[i++] = v;
  return c;
}

// Formulas below assume validated input.

Evaluation tension_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  const double x1_2 = x1 * x1;
  const double x1_3 = x1_2 * x1;
  const double x1_4 = x1_2 * x1_2;
  // The third denominator is 12566*x2*x1^3 - x1^4; the more common
  // 12566*(x2*x1^3 - x1^4) is singular at (1, 1, 3).
  return {(x3 + 2.0) * x2 * x1_2,
          constraints({1.0 - (x2 * x2 * x2 * x3) / (71785.0 * x1_4),
                       1.0 - (140.45 * x1) / (x2 * x2 * x3),
                       (4.0 * x2 * x2 - x1 * x2) / (12566.0 * x2 * x1_3 - x1_4) +
                           1.0 / (5108.0 * x1_2) - 1.0,
                       (x1 + x2) / 1.5 - 1.0})};
}

Evaluation pressure_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  return {0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 +
              19.84 * x1 * x1 * x3,
          constraints({-x1 + 0.0193 * x3, -x2 + 0.00954 * x3,
                       -pi * x3 * x3 * x4 - (4.0 / 3.0) * pi * x3 * x3 * x3 + 1296000.0,
                       x4 - 240.0})};
}

Evaluation gram_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  return {x1 + x2,
          constraints({1.5 - x1 - 2.0 * x2 - 0.5 * std::sin(2.0 * pi * (x1 * x1 - 2.0 * x2)),
                       x1 * x1 + x2 * x2 - 1.5})};
}

Evaluation mtp_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  const double c = std::cos((x1 - 0.1) * x2);
  const double t = std::atan2(x1, x2);
  const double r = 2.0 * std::cos(t) - 0.5 * std::cos(2.0 * t) - 0.25 * std::cos(3.0 * t) -
                   0.125 * std::cos(4.0 * t);
  const double s = 2.0 * std::sin(t);
  const double rr = x1 * x1 + x2 * x2;
  return {-c * c - x1 * std::sin(3.0 * x1 + x2), constraints({rr - r * r - s * s, rr - 4.0})};
}

Evaluation sprinkler_formula(const Eigen::Ref<const Vector>& x) {
  double sum = 0.0;
  double prod = 1.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double scale = static_cast<double>(i + 2);
    sum += (x[i] / scale) * (x[i] / scale);
    prod *= std::cos(pi * x[i] / scale);
  }
  return {sum - 2.0 * prod, Vector()};
}

Evaluation bbox1_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  const double diff = x1 - x2;
  return {std::sin(x1 + x2) + diff * diff - 1.5 * x1 + 2.5 * x2 + 1.0,
          constraints({1.5 - x1 * x1 - x2 * x2, x1 * x2 + 0.5})};
}

Evaluation bbox2_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  const double x1_2 = x1 * x1;
  return {(4.0 - 2.1 * x1_2 + x1_2 * x1_2 / 3.0) * x1_2 + x1 * x2 + (-4.0 + 4.0 * x2 * x2) * x2 * x2,
          Vector()};
}

Evaluation bbox3_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  const double a = x1 * x1 + x2 - 11.0;
  const double b = x1 + x2 * x2 - 7.0;
  return {a * a + b * b, Vector()};
}

Evaluation bbox4_formula(const Eigen::Ref<const Vector>& x) {
  const double x1 = x[0], x2 = x[1];
  const double a = x2 - 5.1 * x1 * x1 / (4.0 * pi * pi) + 5.0 * x1 / pi - 6.0;
  const double dx = x1 - 2.5, dy = x2 - 7.5;
  return {a * a + 10.0 * (1.0 - 1.0 / (8.0 * pi)) * std::cos(x1) + 10.0,
          constraints({dx * dx + dy * dy - 50.0})};
}

Evaluation bbox5_formula(const Eigen::Ref<const Vector>& x) {
  static constexpr double kA[4][3] = {{3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0},
                                      {0.1, 10.0, 35.0}};
  static constexpr double kC[4] = {1.0, 1.2, 3.0, 3.2};
  static constexpr double kP[4][3] = {{0.3689, 0.1170, 0.2673},
                                      {0.4699, 0.4387, 0.7470},
                                      {0.1091, 0.8732, 0.5547},
                                      {0.0381, 0.5743, 0.8828}};
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double d = x[j] - kP[i][j];
      inner += kA[i][j] * d * d;
    }
    sum += kC[i] * std::exp(-inner);
  }
  return {-sum, Vector()};
}

Evaluation bbox6_formula(const Eigen::Ref<const Vector>& x) {
  const double v = x[0];
  const double d = v - 1.0;
  return {std::sin(10.0 * pi * v) / (2.0 * v) + d * d * d * d,
          constraints({std::cos(3.0 * pi * v), 0.7 - v})};
}

Evaluation bbox7_formula(const Eigen::Ref<const Vector>& x) {
  double weighted = 0.0;
  double prod = 1.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    weighted += k * x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(k));
  }
  return {weighted - prod, constraints({x.sum() - 2.0, 0.5 - x.squaredNorm()})};
}

struct Entry {
  FunctionSpec spec;
  Formula formula;
  bool standin;
};

BoxDomain box(std::initializer_list<double> lo, std::initializer_list<double> hi) {
  Vector l(static_cast<Index>(lo.size())), h(static_cast<Index>(hi.size()));
  std::copy(lo.begin(), lo.end(), l.data());
  std::copy(hi.begin(), hi.end(), h.data());
  return BoxDomain(std::move(l), std::move(h));
}

BoxDomain cube(int d, double lo, double hi) {
  return BoxDomain(Vector::Constant(d, lo), Vector::Constant(d, hi));
}

// Function cards. Domains marked "chosen" are not published for the original
// package and are decisions of this library.
const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({{"bbox1", 2, box({-1.5, -3.0}, {2.5, 3.0}), 2,
                  "Black-box 1 stand-in. Published domain [-1.5,2.5]x[-3,3]. Smooth objective; "
                  "feasible set is the outside of a disk intersected with x1*x2 <= -0.5, giving "
                  "two disconnected feasible lobes."},
                 bbox1_formula, true});
    e.push_back({{"bbox2", 2, box({-3.0, -2.0}, {3.0, 2.0}), 0,
                  "Black-box 2 stand-in: six-hump camel. Chosen domain [-3,3]x[-2,2]."},
                 bbox2_formula, true});
    e.push_back({{"bbox3", 2, cube(2, -5.0, 5.0), 0,
                  "Black-box 3 stand-in: Himmelblau. Chosen domain [-5,5]^2."},
                 bbox3_formula, true});
    e.push_back({{"bbox4", 2, box({-5.0, 0.0}, {10.0, 15.0}), 1,
                  "Black-box 4 stand-in: Branin with a disk constraint centred at (2.5, 7.5). "
                  "Chosen domain [-5,10]x[0,15]."},
                 bbox4_formula, true});
    e.push_back({{"bbox5", 3, cube(3, 0.0, 1.0), 0,
                  "Black-box 5 stand-in: Hartmann-3. Chosen domain [0,1]^3."},
                 bbox5_formula, true});
    e.push_back({{"bbox6", 1, box({0.5}, {2.5}), 2,
                  "Black-box 6 stand-in: Gramacy-Lee style 1-d function with a periodic and a "
                  "threshold constraint. Chosen domain [0.5,2.5]."},
                 bbox6_formula, true});
    e.push_back({{"bbox7", 8, cube(8, -1.0, 1.0), 2,
                  "Black-box 7 stand-in: weighted sphere minus Griewank-type product with a "
                  "half-space and an annulus constraint. Chosen domain [-1,1]^8."},
                 bbox7_formula, true});
    e.push_back({{"gram", 2, cube(2, 0.0, 1.0), 2,
                  "Linear objective with a sinusoidal and a disk constraint, a standard toy "
                  "from the constrained Bayesian optimization literature. Chosen domain [0,1]^2."},
                 gram_formula, false});
    e.push_back({{"mtp", 2, box({-2.25, -2.5}, {2.5, 1.75}), 2,
                  "Mishra-type trigonometric objective inside a parametric closed curve and a "
                  "disk of radius 2. Chosen domain [-2.25,2.5]x[-2.5,1.75]."},
                 mtp_formula, true});
    e.push_back({{"pressure", 4, box({0.0625, 0.0625, 10.0, 10.0}, {6.1875, 6.1875, 200.0, 200.0}),
                  4,
                  "Pressure vessel cost: shell thickness x1, head thickness x2, inner radius x3, "
                  "cylinder length x4. Continuous thicknesses. Chosen domain "
                  "[0.0625,6.1875]^2 x [10,200]^2."},
                 pressure_formula, false});
    e.push_back({{"sprinkler", 8, cube(8, 0.0, 1.0), 0,
                  "Scalar stand-in for the sprinkler model; not comparable with the physical "
                  "multi-output original. Chosen domain [0,1]^8."},
                 sprinkler_formula, true});
    e.push_back({{"tension", 3, box({0.05, 0.25, 2.0}, {2.0, 1.3, 15.0}), 4,
                  "Tension spring weight: wire diameter x1, mean coil diameter x2, active coils "
                  "x3. Constraints on deflection, surge frequency, shear stress and outer "
                  "diameter. Domain [0.05,2]x[0.25,1.3]x[2,15]."},
                 tension_formula, false});
    return e;
  }();
  return entries;
}

const Entry& find_entry(std::string_view name) {
  const auto& entries = registry();
  auto it = std::find_if(entries.begin(), entries.end(),
                         [&](const Entry& e) { return e.spec.name == name; });
  if (it == entries.end()) throw UnknownFunction(name);
  return *it;
}

Evaluation checked(const Entry& entry, const Eigen::Ref<const Vector>& x) {
  validate_input(entry.spec, x);
  return entry.formula(x);
}

}  // namespace

void validate_input(const FunctionSpec& spec, const Eigen::Ref<const Vector>& x) {
  if (x.size() != spec.dim || !x.allFinite()) throw InvalidInput();
  if (!spec.domain.contains(x)) throw OutOfDomain();
}

std::span<const FunctionSpec> list_functions() {
  static const std::vector<FunctionSpec> specs = [] {
    std::vector<FunctionSpec> s;
    for (const auto& e : registry()) s.push_back(e.spec);
    return s;
  }();
  return specs;
}

const FunctionSpec& find_function(std::string_view name) { return find_entry(name).spec; }

Evaluation evaluate(std::string_view name, const Eigen::Ref<const Vector>& x) {
  return checked(find_entry(name), x);
}

Evaluation tension(double x1, double x2, double x3) {
  return checked(find_entry("tension"), Eigen::Vector3d(x1, x2, x3));
}

Evaluation pressure(double x1, double x2, double x3, double x4) {
  return checked(find_entry("pressure"), Eigen::Vector4d(x1, x2, x3, x4));
}

Evaluation gram(double x1, double x2) {
  return checked(find_entry("gram"), Eigen::Vector2d(x1, x2));
}

Evaluation evaluate_standin(std::string_view name, const Eigen::Ref<const Vector>& x) {
  const Entry& entry = find_entry(name);
  if (!entry.standin) throw UnknownFunction(name);
  return checked(entry, x);
}

}  // namespace cbo

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

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cbo/types.hpp"

namespace cbo {

/// Output of a computer model: objective value plus inequality constraints.
/// A point is feasible iff every constraint value is <= 0.
struct Evaluation {
  double obj = 0.0;
  Vector con;

  bool feasible() const { return con.size() == 0 || con.maxCoeff() <= 0.0; }
};

/// Registry entry describing one test function.
struct FunctionSpec {
  std::string name;
  int dim = 0;
  BoxDomain domain;
  int n_constraints = 0;
  std::string description;

  bool constrained() const { return n_constraints > 0; }
};

/// Wrong length or non-finite coordinates.
class InvalidInput : public std::invalid_argument {
 public:
  InvalidInput() : std::invalid_argument("Input is invalid.") {}
};

/// Coordinates outside the function's box domain.
class OutOfDomain : public std::out_of_range {
 public:
  OutOfDomain() : std::out_of_range("Input is outside of the domain.") {}
};

class UnknownFunction : public std::invalid_argument {
 public:
  explicit UnknownFunction(std::string_view name)
      : std::invalid_argument("Unknown function: " + std::string(name)) {}
};

/// Throws InvalidInput or OutOfDomain; boundary points are accepted.
void validate_input(const FunctionSpec& spec, const Eigen::Ref<const Vector>& x);

/// All twelve catalog functions, in catalog order.
std::span<const FunctionSpec> list_functions();

/// Throws UnknownFunction.
const FunctionSpec& find_function(std::string_view name);

/// Validates x against the named function and evaluates it.
Evaluation evaluate(std::string_view name, const Eigen::Ref<const Vector>& x);

// Functions with published physical or closed forms.
Evaluation tension(double x1, double x2, double x3);
Evaluation pressure(double x1, double x2, double x3, double x4);
Evaluation gram(double x1, double x2);

/// Stand-in formulas for mtp, sprinkler and bbox1..bbox7. Throws
/// UnknownFunction for any other name.
Evaluation evaluate_standin(std::string_view name, const Eigen::Ref<const Vector>& x);

}  // namespace cbo

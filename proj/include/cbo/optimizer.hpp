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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "cbo/acquisition.hpp"
#include "cbo/gp.hpp"
#include "cbo/testfuns.hpp"

namespace cbo {

struct OptimizerOptions {
  /// Candidate LHS points per input dimension at each proposal.
  int candidates_per_dim = 200;
  /// Acquisition evaluations spent polishing the best candidate.
  int polish_evaluations = 50;
  /// Initial coordinate-search step in rescaled [0,1] units.
  double polish_step = 0.05;
  /// Rescaled distance below which a candidate counts as an existing point.
  double duplicate_tolerance = 1e-9;
  /// Hyperparameter search for the first fit on the seed design.
  GpFitOptions initial_fit;
  /// Hyperparameter search for later fits, warm-started at the previous
  /// lengthscales.
  GpFitOptions refit;

  OptimizerOptions() {
    refit.searched_starts = 1;
    refit.tolerance = 1e-5;
    refit.x_tolerance = 1e-2;
    refit.initial_step = 0.25;
  }
};

struct TraceRow {
  int iter = 0;  // 1-based evaluation index
  Vector x;
  Evaluation eval;
  bool feasible = false;
  std::optional<double> best_feasible;
  /// The proposal for this row used the previous iteration's surrogates
  /// because refitting failed.
  bool model_fallback = false;
};

struct Trace {
  FunctionSpec spec;
  std::uint64_t seed = 0;
  int start = 0;
  int end = 0;
  std::vector<TraceRow> rows;

  Matrix inputs() const;
  Vector objectives() const;
  /// n x m matrix of constraint values.
  Matrix constraint_values() const;
  Incumbent incumbent() const;
  /// Appends an evaluated point, maintaining the running best feasible value.
  void append(const Vector& x, const Evaluation& eval, bool model_fallback = false);
};

struct BestFeasible {
  Vector x_best;
  double obj_best = 0.0;
  bool found = false;
};

/// Objective GP plus one independent GP per constraint.
struct Surrogates {
  GpModel objective;
  std::vector<GpModel> constraints;
};

/// All candidate points coincided with already evaluated inputs.
class ExhaustedCandidates : public std::runtime_error {
 public:
  ExhaustedCandidates() : std::runtime_error("all acquisition candidates duplicate existing points") {}
};

/// Fits the objective and constraint surrogates on every row of the trace.
/// When `previous` is given its lengthscales warm-start the searches.
Surrogates fit_surrogates(const Trace& trace, std::uint64_t seed, const OptimizerOptions& options = {},
                          const Surrogates* previous = nullptr);

/// Acquisition score (expected feasible improvement) and objective sigma
/// for each row of X.
void acquisition_scores(const Surrogates& models, const Incumbent& incumbent,
                        const Eigen::Ref<const Matrix>& X, Vector& score, Vector& sigma);

/// Next input to evaluate: the best of a seeded LHS candidate set by
/// expected feasible improvement, refined by a bounded coordinate search.
/// If every candidate scores zero the candidate with the largest objective
/// sigma is returned. Points within `duplicate_tolerance` of the design are
/// skipped.
Vector propose_next(const Trace& trace, const Surrogates& models, std::uint64_t seed,
                    const OptimizerOptions& options = {});

/// Full sequential run: an LHS seed design of `start` points followed by
/// model-guided proposals until `end` evaluations.
Trace run(std::string_view name, int start, int end, std::uint64_t seed,
          const OptimizerOptions& options = {});

BestFeasible best_feasible(const Trace& trace);

/// CSV with header iter,x1..xd,obj,con1..conm,feasible,best_feasible.
void write_trace_csv(std::ostream& out, const Trace& trace);

}  // namespace cbo

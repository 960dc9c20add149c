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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbo/optimizer.hpp"

namespace cbo {

/// Six-number summary in the layout of R's summary(): quartiles use the
/// type-7 (linear interpolation) quantile.
struct BenchSummary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double mean = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  int n_reps = 0;
  /// Replicates without any feasible point; excluded from the statistics.
  int n_failed = 0;
};

/// Type-7 quantile of already sorted values: h = (n-1)p, linear
/// interpolation between the order statistics around h.
double quantile_type7(std::span<const double> sorted, double p);

/// Throws std::invalid_argument on empty input.
BenchSummary summarize(std::span<const double> values);

struct RepResult {
  int rep = 0;
  std::uint64_t seed = 0;
  BestFeasible best;
  /// Non-empty when the replicate aborted with an exception.
  std::string error;
};

/// n_reps independent runs with seeds base_seed + rep, ordered by rep
/// whatever the number of workers.
std::vector<RepResult> run_reps(std::string_view name, int start, int end, int n_reps,
                                std::uint64_t base_seed, const OptimizerOptions& options = {},
                                int workers = 1);

/// Summary over replicates that found a feasible point; nullopt if none did.
/// n_reps counts all replicates.
std::optional<BenchSummary> summarize_reps(const std::vector<RepResult>& reps);

/// A published tension-spring solution.
struct LiteratureRecord {
  std::string source;
  Vector x;
  double reported_best = 0.0;
};

std::span<const LiteratureRecord> tension_literature();

struct LiteratureComparison {
  struct Row {
    const LiteratureRecord* record = nullptr;
    double evaluated_obj = 0.0;
    double max_con = 0.0;
  };
  std::vector<Row> rows;
  double literature_best = 0.0;
  double achieved_min = 0.0;
  double achieved_median = 0.0;
  bool undercuts_literature_best = false;
};

LiteratureComparison compare_literature(const BenchSummary& summary);

struct BenchReport {
  std::string function;
  int start = 0;
  int end = 0;
  int n_reps = 0;
  std::uint64_t base_seed = 0;
  std::optional<BenchSummary> summary;
  int n_failed = 0;
  std::optional<LiteratureComparison> literature;
  std::vector<RepResult> reps;
};

/// Runs the replicates, summarizes them and, for tension, compares with the
/// literature.
BenchReport run_benchmark(std::string_view name, int start, int end, int n_reps,
                          std::uint64_t base_seed, const OptimizerOptions& options = {},
                          int workers = 1);

/// Report JSON: function, start, end, n_reps, base_seed, summary, n_failed,
/// literature, acquisition notes. Contains no timestamps.
std::string report_json(const BenchReport& report);

/// Per-replicate CSV: rep,seed,found,obj_best,x1..xd.
void write_reps_csv(std::ostream& out, const BenchReport& report);

}  // namespace cbo

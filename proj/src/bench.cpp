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

#include "cbo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

namespace cbo {

double quantile_type7(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile: empty input");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const double lo = std::floor(h);
  const auto i = static_cast<std::size_t>(lo);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + (h - lo) * (sorted[i + 1] - sorted[i]);
}

BenchSummary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize: empty input");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BenchSummary s;
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile_type7(sorted, 0.25);
  s.median = quantile_type7(sorted, 0.5);
  s.q3 = quantile_type7(sorted, 0.75);
  s.mean = std::clamp(std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size()),
                      s.min, s.max);
  s.n_reps = static_cast<int>(sorted.size());
  return s;
}

std::vector<RepResult> run_reps(std::string_view name, int start, int end, int n_reps,
                                std::uint64_t base_seed, const OptimizerOptions& options, int workers) {
  if (n_reps < 1) throw std::invalid_argument("run_reps: n_reps must be positive");
  find_function(name);
  std::vector<RepResult> results(static_cast<std::size_t>(n_reps));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int rep = next++; rep < n_reps; rep = next++) {
      RepResult& r = results[static_cast<std::size_t>(rep)];
      r.rep = rep;
      r.seed = base_seed + static_cast<std::uint64_t>(rep);
      try {
        r.best = best_feasible(run(name, start, end, r.seed, options));
      } catch (const std::exception& e) {
        r.error = e.what();
      }
    }
  };
  const int n_workers = std::clamp(workers, 1, n_reps);
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(work);
  }
  return results;
}

std::optional<BenchSummary> summarize_reps(const std::vector<RepResult>& reps) {
  std::vector<double> values;
  for (const auto& r : reps)
    if (r.best.found) values.push_back(r.best.obj_best);
  if (values.empty()) return std::nullopt;
  BenchSummary s = summarize(values);
  s.n_reps = static_cast<int>(reps.size());
  s.n_failed = static_cast<int>(reps.size() - values.size());
  return s;
}

std::span<const LiteratureRecord> tension_literature() {
  static const std::vector<LiteratureRecord> records = [] {
    auto rec = [](const char* source, double x1, double x2, double x3, double best) {
      return LiteratureRecord{source, Eigen::Vector3d(x1, x2, x3), best};
    };
    return std::vector<LiteratureRecord>{
        rec("Coello (2000)", 0.051480, 0.351661, 11.632201, 0.012704),
        rec("He and Wang (2007)", 0.051728, 0.357644, 11.244543, 0.012675),
        rec("Gandomi et al. (2013)", 0.051690, 0.356730, 11.288500, 0.012670),
        rec("Mirjalili et al. (2014)", 0.051690, 0.356737, 11.288850, 0.012666),
        rec("Lee and Geem (2005)", 0.051154, 0.349871, 12.076432, 0.012671),
        rec("Askarzadeh (2016)", 0.051689, 0.356717, 11.289012, 0.012665),
        rec("Mirjalili (2017)", 0.051207, 0.345215, 12.004032, 0.012676),
        rec("Li et al. (2019)", 0.051618, 0.355004, 11.390144, 0.012665),
    };
  }();
  return records;
}

LiteratureComparison compare_literature(const BenchSummary& summary) {
  LiteratureComparison c;
  c.literature_best = std::numeric_limits<double>::infinity();
  for (const auto& rec : tension_literature()) {
    const Evaluation e = evaluate("tension", rec.x);
    c.rows.push_back({&rec, e.obj, e.con.maxCoeff()});
    c.literature_best = std::min(c.literature_best, rec.reported_best);
  }
  c.achieved_min = summary.min;
  c.achieved_median = summary.median;
  c.undercuts_literature_best = summary.min < c.literature_best;
  return c;
}

BenchReport run_benchmark(std::string_view name, int start, int end, int n_reps,
                          std::uint64_t base_seed, const OptimizerOptions& options, int workers) {
  BenchReport report;
  report.function = std::string(name);
  report.start = start;
  report.end = end;
  report.n_reps = n_reps;
  report.base_seed = base_seed;
  report.reps = run_reps(name, start, end, n_reps, base_seed, options, workers);
  report.summary = summarize_reps(report.reps);
  report.n_failed = report.summary ? report.summary->n_failed : n_reps;
  if (name == "tension" && report.summary) report.literature = compare_literature(*report.summary);
  return report;
}

std::string report_json(const BenchReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["function"] = report.function;
  j["start"] = report.start;
  j["end"] = report.end;
  j["n_reps"] = report.n_reps;
  j["base_seed"] = report.base_seed;
  if (report.summary) {
    const auto& s = *report.summary;
    j["summary"] = {{"min", s.min}, {"q1", s.q1}, {"median", s.median},
                    {"mean", s.mean}, {"q3", s.q3}, {"max", s.max}};
  } else {
    j["summary"] = nullptr;
  }
  j["n_failed"] = report.n_failed;
  j["literature"] = json::array();
  if (report.literature) {
    for (const auto& row : report.literature->rows) {
      j["literature"].push_back({{"source", row.record->source},
                                 {"x", std::vector<double>(row.record->x.begin(), row.record->x.end())},
                                 {"reported_best", row.record->reported_best},
                                 {"evaluated_obj", row.evaluated_obj},
                                 {"max_con", row.max_con}});
    }
    j["literature_best"] = report.literature->literature_best;
    j["undercuts_literature_best"] = report.literature->undercuts_literature_best;
  }
  j["acquisition"] = "expected feasible improvement";
  j["no_feasible_rule"] = "maximize probability of feasibility until a feasible point is observed";
  return j.dump(2) + "\n";
}

void write_reps_csv(std::ostream& out, const BenchReport& report) {
  const int d = find_function(report.function).dim;
  out << "rep,seed,found,obj_best";
  for (int i = 1; i <= d; ++i) out << ",x" << i;
  out << '\n';
  for (const auto& r : report.reps) {
    out << r.rep << ',' << r.seed << ',' << (r.best.found ? "true" : "false") << ',';
    if (r.best.found) {
      out << fmt::format("{:.17g}", r.best.obj_best);
      for (Index i = 0; i < r.best.x_best.size(); ++i) out << ',' << fmt::format("{:.17g}", r.best.x_best[i]);
    } else {
      out << "NA";
      for (int i = 0; i < d; ++i) out << ",NA";
    }
    out << '\n';
  }
}

}  // namespace cbo

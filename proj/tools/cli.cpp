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

#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cbo/bench.hpp"
#include "cbo/optimizer.hpp"
#include "cbo/testfuns.hpp"

namespace cbo::cli {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInput = 2;

std::string num17(double v) { return fmt::format("{:.17g}", v); }
std::string num7(double v) { return fmt::format("{:.7g}", v); }

/// Comma-separated reals; nullopt on any malformed token.
std::optional<Vector> parse_coords(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    double v = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    while (first < last && *first == ' ') ++first;
    if (first < last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    values.push_back(v);
  }
  if (values.empty() || (!text.empty() && text.back() == ',')) return std::nullopt;
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

/// Opens `path` for writing, or returns the fallback stream when empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

int cmd_list(std::ostream& out) {
  out << fmt::format("{:<10} {:>5}  {:<13} {:>11}\n", "function", "dim", "type", "constraints");
  for (const auto& spec : list_functions()) {
    out << fmt::format("{:<10} {:>5}  {:<13} {:>11}\n", spec.name, spec.dim,
                       spec.constrained() ? "constrained" : "unconstrained",
                       spec.constrained() ? std::to_string(spec.n_constraints) : "--");
  }
  return kOk;
}

int cmd_eval(const std::string& name, const std::string& coords, std::ostream& out) {
  const FunctionSpec& spec = find_function(name);
  const auto x = parse_coords(coords);
  if (!x) throw InvalidInput();
  validate_input(spec, *x);
  const Evaluation e = evaluate(name, *x);
  out << "{\"obj\": " << num17(e.obj) << ", \"con\": [";
  for (Index k = 0; k < e.con.size(); ++k) out << (k ? ", " : "") << num17(e.con[k]);
  out << "]}\n";
  return kOk;
}

void print_best(std::ostream& os, const BestFeasible& best) {
  if (!best.found) {
    os << "no feasible point found\n";
    return;
  }
  os << "best feasible obj = " << num7(best.obj_best) << " at x = (";
  for (Index i = 0; i < best.x_best.size(); ++i) os << (i ? ", " : "") << num7(best.x_best[i]);
  os << ")\n";
}

int cmd_optimize(const std::string& name, int start, int end, std::uint64_t seed,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  find_function(name);
  const Trace trace = cbo::run(name, start, end, seed);
  Sink sink(out_path, out);
  write_trace_csv(*sink, trace);
  print_best(out_path.empty() ? err : out, best_feasible(trace));
  return kOk;
}

void print_summary_table(std::ostream& os, const BenchReport& report) {
  if (!report.summary) {
    os << "no replicate found a feasible point (" << report.n_failed << " failed)\n";
    return;
  }
  const auto& s = *report.summary;
  os << fmt::format("{:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n", "Min.", "1st Qu.", "Median",
                    "Mean", "3rd Qu.", "Max.");
  os << fmt::format("{:>10} {:>10} {:>10} {:>10} {:>10} {:>10}\n", num7(s.min), num7(s.q1),
                    num7(s.median), num7(s.mean), num7(s.q3), num7(s.max));
  os << "replicates: " << s.n_reps << ", without feasible point: " << s.n_failed << "\n";
  if (report.literature) {
    const auto& lit = *report.literature;
    for (const auto& row : lit.rows) {
      os << fmt::format("  {:<24} reported {:>10}\n", row.record->source, num7(row.record->reported_best));
    }
    os << "achieved min " << num7(lit.achieved_min) << ", median " << num7(lit.achieved_median)
       << (lit.undercuts_literature_best ? " -- undercuts literature best " : " -- does not undercut literature best ")
       << num7(lit.literature_best) << "\n";
  }
}

int cmd_bench(const std::string& name, int reps, int start, int end, std::uint64_t seed, int workers,
              const std::string& out_path, const std::string& csv_path, std::ostream& out,
              std::ostream& err) {
  find_function(name);
  const BenchReport report = run_benchmark(name, start, end, reps, seed, {}, workers);
  {
    Sink sink(out_path, out);
    *sink << report_json(report);
  }
  if (!csv_path.empty()) {
    Sink csv(csv_path, out);
    write_reps_csv(*csv, report);
  }
  print_summary_table(err, report);
  return kOk;
}

int cmd_grid(const std::string& name, int resolution, const std::vector<std::string>& pins,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  const FunctionSpec& spec = find_function(name);
  if (resolution < 2) {
    err << "grid: resolution must be at least 2\n";
    return kInput;
  }
  Vector base = spec.domain.midpoint();
  std::vector<bool> pinned(static_cast<std::size_t>(spec.dim), false);
  for (const auto& pin : pins) {
    const auto eq = pin.find('=');
    int axis = 0;
    double value = 0;
    const char* a0 = pin.data();
    const char* a1 = pin.data() + (eq == std::string::npos ? 0 : eq);
    const char* v1 = pin.data() + pin.size();
    if (eq == std::string::npos || std::from_chars(a0, a1, axis).ptr != a1 ||
        std::from_chars(a1 + 1, v1, value).ptr != v1 || axis < 1 || axis > spec.dim) {
      throw InvalidInput();
    }
    base[axis - 1] = value;
    pinned[static_cast<std::size_t>(axis - 1)] = true;
  }
  std::vector<Index> free_axes;
  for (Index i = 0; i < spec.dim; ++i)
    if (!pinned[static_cast<std::size_t>(i)]) free_axes.push_back(i);
  if (free_axes.empty() || free_axes.size() > 2) {
    err << "grid: exactly one or two free axes are required (pin the others with --fix i=v)\n";
    return kInput;
  }
  validate_input(spec, base);

  auto axis_value = [&](Index axis, int i) {
    if (i == resolution - 1) return spec.domain.upper[axis];
    return spec.domain.lower[axis] +
           (spec.domain.upper[axis] - spec.domain.lower[axis]) * static_cast<double>(i) /
               static_cast<double>(resolution - 1);
  };

  Sink sink(out_path, out);
  std::ostream& os = *sink;
  for (std::size_t a = 0; a < free_axes.size(); ++a) os << (a ? "," : "") << 'x' << free_axes[a] + 1;
  os << ",obj";
  for (int k = 1; k <= spec.n_constraints; ++k) os << ",con" << k;
  os << '\n';
  const int outer = free_axes.size() == 2 ? resolution : 1;
  Vector x = base;
  for (int j = 0; j < outer; ++j) {
    if (free_axes.size() == 2) x[free_axes[1]] = axis_value(free_axes[1], j);
    for (int i = 0; i < resolution; ++i) {
      x[free_axes[0]] = axis_value(free_axes[0], i);
      const Evaluation e = evaluate(name, x);
      for (std::size_t a = 0; a < free_axes.size(); ++a) os << (a ? "," : "") << num17(x[free_axes[a]]);
      os << ',' << num17(e.obj);
      for (Index k = 0; k < e.con.size(); ++k) os << ',' << num17(e.con[k]);
      os << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained Bayesian optimization benchmark suite"};
  app.require_subcommand(1);

  std::string name, coords, out_path, csv_path;
  int start = 10, end = 300, reps = 30, workers = 1, resolution = 200;
  std::uint64_t seed = 0;
  std::vector<std::string> pins;

  auto* list = app.add_subcommand("list", "List the catalog of test functions");

  auto* eval = app.add_subcommand("eval", "Evaluate one function at one input (JSON on stdout)");
  eval->add_option("name", name, "Function name")->required();
  eval->add_option("--x", coords, "Comma-separated coordinates, e.g. 1,1,3")->required();

  auto* optimize = app.add_subcommand("optimize", "Run one constrained BO optimization and write its trace CSV");
  optimize->add_option("name", name, "Function name")->required();
  optimize->add_option("--start", start, "Size of the initial LHS design")->capture_default_str();
  optimize->add_option("--end", end, "Total number of evaluations")->capture_default_str();
  optimize->add_option("--seed", seed, "Random seed")->capture_default_str();
  optimize->add_option("--out", out_path, "Trace CSV path (stdout when omitted)");

  auto* bench = app.add_subcommand("bench", "Monte Carlo replication with a six-number summary report");
  bench->add_option("name", name, "Function name")->required();
  bench->add_option("--reps", reps, "Number of replicates")->capture_default_str();
  bench->add_option("--start", start, "Size of the initial LHS design")->capture_default_str();
  bench->add_option("--end", end, "Total number of evaluations")->capture_default_str();
  bench->add_option("--seed", seed, "Base seed; replicate r uses seed + r")->capture_default_str();
  bench->add_option("--workers", workers, "Concurrent replicates")->capture_default_str();
  bench->add_option("--out", out_path, "Report JSON path (stdout when omitted)");
  bench->add_option("--csv", csv_path, "Per-replicate CSV path");

  auto* grid = app.add_subcommand("grid", "Evaluate a dense grid over one or two free axes (CSV)");
  grid->add_option("name", name, "Function name")->required();
  grid->add_option("--n", resolution, "Points per axis")->capture_default_str();
  grid->add_option("--fix", pins, "Pin a coordinate, 1-based: --fix 3=8 (repeatable)");
  grid->add_option("--out", out_path, "CSV path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*list) return cmd_list(out);
    if (*eval) return cmd_eval(name, coords, out);
    if (*optimize) return cmd_optimize(name, start, end, seed, out_path, out, err);
    if (*bench) return cmd_bench(name, reps, start, end, seed, workers, out_path, csv_path, out, err);
    if (*grid) return cmd_grid(name, resolution, pins, out_path, out, err);
  } catch (const UnknownFunction& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << e.what() << "\n";
    return kInput;
  } catch (const OutOfDomain& e) {
    err << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace cbo::cli

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

// Acceptance checks. Each criterion prints one PASS/FAIL line; the process
// exits non-zero when any selected criterion fails.
//
//   cbo_acceptance            run all criteria
//   cbo_acceptance --only N   run criterion N

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>

#include "cbo/acquisition.hpp"
#include "cbo/bench.hpp"
#include "cbo/design.hpp"
#include "cbo/gp.hpp"
#include "cbo/optimizer.hpp"
#include "cbo/testfuns.hpp"
#include "support/oracles.hpp"

#ifndef CBO_CLI_PATH
#error "CBO_CLI_PATH must name the cbobench executable"
#endif

namespace {

using namespace cbo;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::filesystem::path scratch_file(const std::string& stem) {
  return std::filesystem::temp_directory_path() / fmt::format("cbo_acceptance_{}_{}", ::getpid(), stem);
}

int shell(const std::string& args, const std::filesystem::path& stdout_path) {
  const std::string cmd = fmt::format("\"{}\" {} > \"{}\" 2>/dev/null", CBO_CLI_PATH, args, stdout_path.string());
  return std::system(cmd.c_str());
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::strtod(tok.c_str(), nullptr));
  return v;
}

Outcome criterion1() {
  const auto path = scratch_file("eval.json");
  const int code = shell("eval tension --x 1,1,3", path);
  const std::string text = slurp(path);
  std::filesystem::remove(path);
  if (code != 0) return {false, fmt::format("exit status {}", code)};
  // {"obj":...,"con":[...]}
  const auto obj_at = text.find("\"obj\"");
  const auto con_at = text.find('[');
  const auto con_end = text.find(']');
  if (obj_at == std::string::npos || con_at == std::string::npos || con_end == std::string::npos) {
    return {false, "unexpected output: " + text};
  }
  const double obj = std::strtod(text.c_str() + text.find(':', obj_at) + 1, nullptr);
  const std::vector<double> con = parse_doubles(text.substr(con_at + 1, con_end - con_at - 1));
  const std::vector<double> expected = {0.9999582, -45.8166667, -0.9995655, 0.3333333};
  bool ok = obj == 5.0 && con.size() == expected.size();
  double worst = 0.0;
  for (std::size_t k = 0; ok && k < con.size(); ++k) worst = std::max(worst, std::abs(con[k] - expected[k]));
  ok = ok && worst <= 1e-6;
  return {ok, fmt::format("obj = {:.17g}, max |con - expected| = {:.3g}", obj, worst)};
}

Outcome criterion2() {
  int good = 0;
  std::string misses;
  for (const auto& rec : tension_literature()) {
    const Evaluation e = evaluate("tension", rec.x);
    const double slack = e.con.maxCoeff();
    const double rel = std::abs(e.obj - rec.reported_best) / std::abs(rec.reported_best);
    if (slack <= 1e-3 && rel <= 5e-3) {
      ++good;
    } else {
      misses += fmt::format("; {}: obj {:.7g} vs {:.7g} (rel {:.3g}), max con {:.3g}", rec.source, e.obj,
                            rec.reported_best, rel, slack);
    }
  }
  const int total = static_cast<int>(tension_literature().size());
  return {good == total && total == 8, fmt::format("{}/{} rows consistent{}", good, total, misses)};
}

Outcome criterion3() {
  std::mt19937_64 gen(20260415);
  std::uniform_real_distribution<double> centre(-1.0, 1.0), spread(0.2, 2.0);
  int hits = 0;
  for (int t = 0; t < 100; ++t) {
    const double mu = centre(gen), sigma = spread(gen), f_min = centre(gen);
    const auto mc = oracle::improvement_mc(mu, sigma, f_min, 1'000'000, gen);
    if (std::abs(expected_improvement(mu, sigma, f_min) - mc.mean) <= 3.0 * mc.standard_error) ++hits;
  }
  return {hits >= 97, fmt::format("{}/100 triples within 3 standard errors", hits)};
}

Outcome criterion4() {
  const auto reps = run_reps("tension", 10, 300, 30, 0);
  int found = 0;
  for (const auto& r : reps) found += r.best.found ? 1 : 0;
  const auto s = summarize_reps(reps);
  if (!s) return {false, "no replicate found a feasible point"};
  const bool ok = found == 30 && s->min <= 0.0127 && s->median <= 0.0145;
  return {ok, fmt::format("feasible {}/30, min {:.7g}, median {:.7g}, max {:.7g}", found, s->min, s->median,
                          s->max)};
}

Outcome criterion5() {
  const auto grid = oracle::grid_feasible_min("bbox1", 2001);
  const auto reps = run_reps("bbox1", 10, 100, 30, 0);
  int hits = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : reps) {
    if (!r.best.found) continue;
    worst = std::max(worst, r.best.obj_best);
    if (std::abs(r.best.obj_best - grid.value) <= 0.01 * std::abs(grid.value)) ++hits;
  }
  return {hits >= 27, fmt::format("{}/30 within 1% of grid minimum {:.7g}; worst rep {:.7g}", hits, grid.value, worst)};
}

Outcome criterion6() {
  int checked = 0;
  std::string failures;
  std::uint64_t seed = 600;
  for (const auto& spec : list_functions()) {
    const Matrix X = lhs_design(20, spec.domain, ++seed);
    Matrix Y(20, 1 + spec.n_constraints);
    for (Index i = 0; i < 20; ++i) {
      const Evaluation e = evaluate(spec.name, X.row(i).transpose());
      Y(i, 0) = e.obj;
      for (int k = 0; k < spec.n_constraints; ++k) Y(i, 1 + k) = e.con[k];
    }
    const Matrix T = lhs_design(1000, spec.domain, seed + 1000);
    const Vector far = spec.domain.lower - 1e3 * spec.domain.width();
    for (Index c = 0; c < Y.cols(); ++c) {
      GpFitOptions opts;
      opts.seed = seed;
      const Vector y = Y.col(c);
      const GpModel model = GpModel::fit(X, y, spec.domain, opts);
      ++checked;
      const std::string label = c == 0 ? spec.name + " obj" : fmt::format("{} con{}", spec.name, c);

      Vector mu, sigma;
      model.predict(X, mu, sigma);
      const double residual = (mu - y).cwiseAbs().maxCoeff();
      if (residual > 1e-6 * model.y_sd()) failures += fmt::format("; {} residual {:.3g}", label, residual);

      model.predict(T, mu, sigma);
      if (!(sigma.array() >= 0.0).all() || !sigma.allFinite()) failures += fmt::format("; {} negative variance", label);

      const auto p = model.predict(far);
      const double prior_sd = model.y_sd() * std::sqrt(model.tau2() * (1.0 + model.jitter()));
      const double tol = 1e-9 * std::max(1.0, std::abs(model.y_mean()) + model.y_sd());
      if (std::abs(p.mu - model.y_mean()) > tol || std::abs(p.sigma - prior_sd) > tol) {
        failures += fmt::format("; {} no prior reversion", label);
      }
    }
  }
  return {failures.empty(), fmt::format("{} surrogates checked{}", checked, failures)};
}

Outcome criterion7() {
  constexpr int n = 1000;
  auto at = [](double lo, double hi, int i) { return oracle::linspace_at(lo, hi, n, i); };
  std::string failures;
  auto fail = [&](const std::string& what) {
    if (failures.find(what) == std::string::npos) failures += "; " + what;
  };

  for (double sigma : {1e-3, 0.1, 1.0, 10.0}) {
    for (int i = 0; i < n; ++i) {
      const double ei = expected_improvement(at(-50.0, 50.0, i), sigma, 0.0);
      if (!(ei >= 0.0)) fail("EI negative");
    }
  }
  for (double gap : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
    double prev = -1.0;
    for (int i = 0; i < n; ++i) {
      const double ei = expected_improvement(0.0, at(0.0, 5.0, i), gap);
      if (ei < prev * (1.0 - 1e-14)) fail("EI decreasing in sigma");
      prev = ei;
    }
  }
  for (double sigma : {0.0, 0.01, 1.0, 5.0}) {
    double prev = -1.0;
    for (int i = 0; i < n; ++i) {
      const double ei = expected_improvement(0.0, sigma, at(-5.0, 5.0, i));
      if (ei < prev * (1.0 - 1e-14)) fail("EI decreasing in f_min");
      prev = ei;
    }
  }
  for (int i = 0; i < n; ++i) {
    const double gap = at(-1.0, 1.0, i);
    const double limit = std::max(gap, 0.0);
    if (expected_improvement(0.0, 0.0, gap) != limit) fail("EI at sigma 0");
    for (double sigma : {1e-4, 1e-8, 1e-12}) {
      if (std::abs(expected_improvement(0.0, sigma, gap) - limit) > 0.4 * sigma) fail("EI discontinuous at sigma 0");
    }
  }
  for (int i = 0; i < n; ++i) {
    Vector mu_c(2), sigma_c(2);
    mu_c << at(-10.0, 10.0, i), -at(-10.0, 10.0, i) / 2;
    for (double s : {0.0, 1e-6, 0.5, 3.0}) {
      sigma_c.setConstant(s);
      const double both = prob_feasible(mu_c, sigma_c);
      const double first = prob_feasible(mu_c.head(1), sigma_c.head(1));
      if (!(both >= 0.0 && both <= 1.0) || both > first) fail("prob_feasible out of bounds");
    }
  }
  return {failures.empty(), failures.empty() ? "all properties hold" : failures.substr(2)};
}

Outcome criterion8() {
  const auto a = scratch_file("a.json"), b = scratch_file("b.json"), sink = scratch_file("sink");
  const int ca = shell(fmt::format("bench tension --reps 5 --seed 42 --out \"{}\"", a.string()), sink);
  const int cb = shell(fmt::format("bench tension --reps 5 --seed 42 --out \"{}\"", b.string()), sink);
  const std::string ja = slurp(a), jb = slurp(b);
  for (const auto& p : {a, b, sink}) std::filesystem::remove(p);
  const bool ok = ca == 0 && cb == 0 && !ja.empty() && ja == jb && ja.find("timestamp") == std::string::npos;
  return {ok, fmt::format("exit {} / {}, {} vs {} bytes, identical: {}", ca, cb, ja.size(), jb.size(), ja == jb)};
}

Outcome criterion9() {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> length(1, 60);
  std::uniform_real_distribution<double> scale_exp(-3.0, 3.0), unit(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const double scale = std::pow(10.0, scale_exp(gen));
    std::vector<double> v(static_cast<std::size_t>(length(gen)));
    for (auto& x : v) x = scale * unit(gen);
    const BenchSummary s = summarize(v);
    long double sum = 0;
    for (double x : v) sum += x;
    const double mean = static_cast<double>(sum / v.size());
    const std::vector<std::pair<double, double>> pairs = {
        {s.min, oracle::type7_quantile(v, 0.0)},     {s.q1, oracle::type7_quantile(v, 0.25)},
        {s.median, oracle::type7_quantile(v, 0.5)},  {s.mean, mean},
        {s.q3, oracle::type7_quantile(v, 0.75)},     {s.max, oracle::type7_quantile(v, 1.0)},
    };
    for (const auto& [got, want] : pairs) worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
  }
  return {worst <= 1e-12, fmt::format("max relative deviation {:.3g}", worst)};
}

Outcome criterion10() {
  const auto path = scratch_file("grid.csv");
  const int code = shell("grid bbox1 --n 200", path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) rows.push_back(parse_doubles(line));
  in.close();
  std::filesystem::remove(path);
  if (code != 0) return {false, fmt::format("exit status {}", code)};

  const auto& dom = find_function("bbox1").domain;
  const double lo0 = dom.lower[0], hi0 = dom.upper[0], lo1 = dom.lower[1], hi1 = dom.upper[1];
  const bool count_ok = rows.size() == 40000;
  bool corners_ok = count_ok;
  if (count_ok) {
    auto corner = [&](std::size_t r, double x1, double x2) { return rows[r][0] == x1 && rows[r][1] == x2; };
    corners_ok = corner(0, lo0, lo1) && corner(199, hi0, lo1) && corner(39800, lo0, hi1) && corner(39999, hi0, hi1);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.size() == 5 && r[3] <= 0.0 && r[4] <= 0.0) best = std::min(best, r[2]);
  }
  const auto oracle_min = oracle::grid_feasible_min("bbox1", 200);
  const bool min_ok = std::abs(best - oracle_min.value) <= 1e-12 * std::max(1.0, std::abs(oracle_min.value));
  return {count_ok && corners_ok && min_ok,
          fmt::format("{} rows, corners exact: {}, feasible min {:.10g} vs oracle {:.10g}", rows.size(), corners_ok,
                      best, oracle_min.value)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "tension evaluation anchor", criterion1},
      {2, "literature table consistency", criterion2},
      {3, "expected improvement vs Monte Carlo", criterion3},
      {4, "tension benchmark distribution", criterion4},
      {5, "bbox1 optimization vs grid oracle", criterion5},
      {6, "GP property suite", criterion6},
      {7, "acquisition property suite", criterion7},
      {8, "benchmark report reproducibility", criterion8},
      {9, "summary vs type-7 oracle", criterion9},
      {10, "grid emission", criterion10},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: cbo_acceptance [--only N]\n";
      return 2;
    }
  }
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << fmt::format("[{}] criterion {}: {} ({})", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail)
              << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}

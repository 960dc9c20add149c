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

#include "cbo/optimizer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "cbo/design.hpp"

namespace cbo {

Matrix Trace::inputs() const {
  Matrix X(static_cast<Index>(rows.size()), spec.dim);
  for (std::size_t i = 0; i < rows.size(); ++i) X.row(static_cast<Index>(i)) = rows[i].x.transpose();
  return X;
}

Vector Trace::objectives() const {
  Vector y(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) y[static_cast<Index>(i)] = rows[i].eval.obj;
  return y;
}

Matrix Trace::constraint_values() const {
  Matrix C(static_cast<Index>(rows.size()), spec.n_constraints);
  for (std::size_t i = 0; i < rows.size(); ++i) C.row(static_cast<Index>(i)) = rows[i].eval.con.transpose();
  return C;
}

Incumbent Trace::incumbent() const {
  if (rows.empty() || !rows.back().best_feasible) return {};
  return {*rows.back().best_feasible, true};
}

void Trace::append(const Vector& x, const Evaluation& eval, bool model_fallback) {
  TraceRow row;
  row.iter = static_cast<int>(rows.size()) + 1;
  row.x = x;
  row.eval = eval;
  row.feasible = eval.feasible();
  row.model_fallback = model_fallback;
  row.best_feasible = rows.empty() ? std::nullopt : rows.back().best_feasible;
  if (row.feasible && (!row.best_feasible || eval.obj < *row.best_feasible)) row.best_feasible = eval.obj;
  rows.push_back(std::move(row));
}

Surrogates fit_surrogates(const Trace& trace, std::uint64_t seed, const OptimizerOptions& options,
                          const Surrogates* previous) {
  const Matrix X = trace.inputs();
  auto fit_one = [&](const Vector& y, const GpModel* prior, std::uint64_t stream) {
    GpFitOptions opts = prior ? options.refit : options.initial_fit;
    opts.seed = derive_seed(seed, stream);
    if (prior && !prior->degenerate()) opts.warm_start = prior->theta();
    return GpModel::fit(X, y, trace.spec.domain, opts);
  };

  Surrogates s{fit_one(trace.objectives(), previous ? &previous->objective : nullptr, 0), {}};
  const Matrix C = trace.constraint_values();
  for (Index k = 0; k < C.cols(); ++k) {
    const GpModel* prior = previous ? &previous->constraints[static_cast<std::size_t>(k)] : nullptr;
    s.constraints.push_back(fit_one(C.col(k), prior, static_cast<std::uint64_t>(k) + 1));
  }
  return s;
}

void acquisition_scores(const Surrogates& models, const Incumbent& incumbent,
                        const Eigen::Ref<const Matrix>& X, Vector& score, Vector& sigma) {
  Vector mu;
  models.objective.predict(X, mu, sigma);
  const Index m = static_cast<Index>(models.constraints.size());
  Matrix mu_c(X.rows(), m), sigma_c(X.rows(), m);
  for (Index k = 0; k < m; ++k) {
    Vector mk, sk;
    models.constraints[static_cast<std::size_t>(k)].predict(X, mk, sk);
    mu_c.col(k) = mk;
    sigma_c.col(k) = sk;
  }
  score.resize(X.rows());
  for (Index r = 0; r < X.rows(); ++r) {
    score[r] = efi(mu[r], sigma[r], incumbent, mu_c.row(r), sigma_c.row(r));
  }
}

namespace {

bool is_duplicate(const Matrix& existing_units, const Vector& u, double tolerance) {
  for (Index i = 0; i < existing_units.rows(); ++i) {
    if ((existing_units.row(i).transpose() - u).norm() <= tolerance) return true;
  }
  return false;
}

// Coordinate search in [0,1]^d with a shrinking step.
Vector polish(const Vector& start, double start_score, int budget, double step,
              const std::function<double(const Vector&)>& score) {
  Vector best = start;
  double best_score = start_score;
  int used = 0;
  while (used < budget && step > 1e-8) {
    bool improved = false;
    for (Index k = 0; k < best.size() && used < budget; ++k) {
      for (double dir : {1.0, -1.0}) {
        if (used >= budget) break;
        Vector trial = best;
        trial[k] = std::clamp(trial[k] + dir * step, 0.0, 1.0);
        if (trial[k] == best[k]) continue;
        const double s = score(trial);
        ++used;
        if (s > best_score) {
          best = std::move(trial);
          best_score = s;
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

Vector propose_next(const Trace& trace, const Surrogates& models, std::uint64_t seed,
                    const OptimizerOptions& options) {
  const BoxDomain& domain = trace.spec.domain;
  const Index d = domain.dim();
  const Incumbent incumbent = trace.incumbent();

  Matrix existing(static_cast<Index>(trace.rows.size()), d);
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    existing.row(static_cast<Index>(i)) = domain.to_unit(trace.rows[i].x).transpose();
  }

  const Index n_cand = std::max<Index>(1, options.candidates_per_dim * d);
  const Matrix candidates = lhs_design(n_cand, domain, seed);
  Vector score, sigma;
  acquisition_scores(models, incumbent, candidates, score, sigma);

  std::vector<Index> order(static_cast<std::size_t>(n_cand));
  std::iota(order.begin(), order.end(), Index{0});
  const double top = score.maxCoeff();
  const bool flat = !(top > std::numeric_limits<double>::min());
  const Vector& key = flat ? sigma : score;
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return key[a] > key[b]; });

  for (Index idx : order) {
    const Vector u = domain.to_unit(candidates.row(idx).transpose());
    if (is_duplicate(existing, u, options.duplicate_tolerance)) continue;
    if (flat || options.polish_evaluations <= 0) return candidates.row(idx).transpose();

    auto score_unit = [&](const Vector& v) {
      Vector s, sg;
      acquisition_scores(models, incumbent, domain.from_unit(v).transpose(), s, sg);
      return s[0];
    };
    const Vector refined = polish(u, score[idx], options.polish_evaluations, options.polish_step, score_unit);
    if (!is_duplicate(existing, refined, options.duplicate_tolerance)) return domain.from_unit(refined);
    return candidates.row(idx).transpose();
  }
  throw ExhaustedCandidates();
}

Trace run(std::string_view name, int start, int end, std::uint64_t seed, const OptimizerOptions& options) {
  if (start < 2) throw std::invalid_argument("run: start must be at least 2");
  if (end <= start) throw std::invalid_argument("run: end must exceed start");

  Trace trace;
  trace.spec = find_function(name);
  trace.seed = seed;
  trace.start = start;
  trace.end = end;
  trace.rows.reserve(static_cast<std::size_t>(end));

  // Stream 0 seeds the design; stream 2k+1 / 2k+2 drive the fit and the
  // candidate set of the k-th proposal.
  const Matrix design = lhs_design(start, trace.spec.domain, derive_seed(seed, 0));
  for (Index i = 0; i < design.rows(); ++i) {
    const Vector x = design.row(i).transpose();
    trace.append(x, evaluate(name, x));
  }

  std::optional<Surrogates> models;
  for (int k = start; k < end; ++k) {
    const auto step = static_cast<std::uint64_t>(k - start);
    bool fallback = false;
    try {
      models = fit_surrogates(trace, derive_seed(seed, 2 * step + 1), options, models ? &*models : nullptr);
    } catch (const NonPositiveDefinite&) {
      if (!models) throw;
      fallback = true;
    }
    const Vector x = propose_next(trace, *models, derive_seed(seed, 2 * step + 2), options);
    trace.append(x, evaluate(name, x), fallback);
  }
  return trace;
}

BestFeasible best_feasible(const Trace& trace) {
  BestFeasible best;
  for (const auto& row : trace.rows) {
    if (!row.feasible) continue;
    if (!best.found || row.eval.obj < best.obj_best) {
      best.found = true;
      best.obj_best = row.eval.obj;
      best.x_best = row.x;
    }
  }
  return best;
}

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "iter";
  for (int i = 1; i <= trace.spec.dim; ++i) out << ",x" << i;
  out << ",obj";
  for (int k = 1; k <= trace.spec.n_constraints; ++k) out << ",con" << k;
  out << ",feasible,best_feasible\n";
  for (const auto& row : trace.rows) {
    out << row.iter;
    for (Index i = 0; i < row.x.size(); ++i) out << ',' << fmt::format("{:.17g}", row.x[i]);
    out << ',' << fmt::format("{:.17g}", row.eval.obj);
    for (Index k = 0; k < row.eval.con.size(); ++k) out << ',' << fmt::format("{:.17g}", row.eval.con[k]);
    out << ',' << (row.feasible ? "true" : "false") << ',';
    if (row.best_feasible) out << fmt::format("{:.17g}", *row.best_feasible);
    else out << "NA";
    out << '\n';
  }
}

}  // namespace cbo

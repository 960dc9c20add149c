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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "cbo/nelder_mead.hpp"
#include "cbo/types.hpp"

namespace cbo {

/// Anisotropic squared-exponential correlation exp(-sum_i (x_i - z_i)^2 / theta_i).
template <typename DerivedX, typename DerivedZ, typename DerivedT>
typename DerivedX::Scalar correlation(const Eigen::MatrixBase<DerivedX>& x,
                                      const Eigen::MatrixBase<DerivedZ>& z,
                                      const Eigen::MatrixBase<DerivedT>& theta) {
  if (x.size() != z.size() || x.size() != theta.size()) {
    throw std::invalid_argument("correlation: dimension mismatch");
  }
  return std::exp(-((x - z).array().square() / theta.array()).sum());
}

/// Covariance could not be factored even at the largest allowed nugget.
class NonPositiveDefinite : public std::runtime_error {
 public:
  NonPositiveDefinite() : std::runtime_error("GP covariance is not positive definite") {}
};

template <typename Scalar>
struct PredictiveMoments {
  Scalar mu;
  Scalar sigma;
};

struct GpFitOptions {
  double jitter = 1e-8;
  /// Jitter is multiplied by 10 on factorization failure up to this value.
  double max_jitter = 1e-4;
  int n_starts = 5;
  /// Number of starts (best by likelihood) that receive a local search.
  int searched_starts = 5;
  int max_evaluations = 300;
  /// Convergence on the log likelihood (relative) and on log lengthscales.
  double tolerance = 1e-7;
  double x_tolerance = 1e-4;
  /// Initial simplex edge in log-lengthscale units.
  double initial_step = 0.5;
  double theta_lower = 1e-3;
  double theta_upper = 10.0;
  /// Fixed lengthscales in rescaled units; disables the search.
  std::optional<Vector> theta;
  /// Fixed signal variance; otherwise profiled out.
  std::optional<double> tau2;
  /// Preferred first start, typically the previous fit's lengthscales.
  std::optional<Vector> warm_start;
  std::uint64_t seed = 0;
};

/// Zero-mean GP on standardized responses with inputs rescaled to [0,1]^d.
///
/// Covariance K = tau2 * (R + jitter * I) with R the squared-exponential
/// correlation. Lengthscales maximize the log marginal likelihood with tau2
/// concentrated out (tau2 = y'(R + jI)^-1 y / n) unless fixed by options.
template <typename Scalar>
class BasicGpModel {
 public:
  using VectorType = VectorX<Scalar>;
  using MatrixType = MatrixX<Scalar>;

  static BasicGpModel fit(const MatrixType& X, const VectorType& y,
                          const BasicBoxDomain<Scalar>& domain, const GpFitOptions& options = {});

  PredictiveMoments<Scalar> predict(const Eigen::Ref<const VectorType>& x) const;

  /// Row-wise prediction for a batch of inputs.
  void predict(const Eigen::Ref<const MatrixType>& X, VectorType& mu, VectorType& sigma) const;

  /// Gradient of the predictive mean with respect to x in input units.
  VectorType mean_gradient(const Eigen::Ref<const VectorType>& x) const;

  /// -1/2 (y'K^-1 y + log det K + n log 2pi) on standardized responses.
  /// Throws std::logic_error for a degenerate (constant-response) model.
  Scalar log_likelihood() const {
    if (degenerate_) throw std::logic_error("log_likelihood: constant response has no likelihood");
    return log_likelihood_;
  }

  /// Log likelihood at other lengthscales (and optional tau2) for the same data.
  Scalar log_likelihood_at(const VectorType& theta, std::optional<Scalar> tau2 = std::nullopt) const;

  /// Lower factor L with L L' = K = tau2 (R + jitter I).
  MatrixType covariance_cholesky() const { return std::sqrt(tau2_) * factor_.matrixL().toDenseMatrix(); }

  /// K = tau2 (R + jitter I) rebuilt from the training inputs.
  MatrixType covariance() const;

  const MatrixType& x_train() const { return x_train_; }
  const VectorType& y_train() const { return y_train_; }
  const VectorType& theta() const { return theta_; }
  Scalar tau2() const { return tau2_; }
  Scalar jitter() const { return jitter_; }
  /// K^-1 y_c with y_c the standardized responses.
  VectorType alpha() const { return alpha_ / tau2_; }
  Scalar y_mean() const { return y_mean_; }
  Scalar y_sd() const { return y_sd_; }
  bool degenerate() const { return degenerate_; }
  Index size() const { return x_train_.rows(); }
  Index dim() const { return x_train_.cols(); }

 private:
  struct Profile {
    Scalar log_likelihood = -std::numeric_limits<Scalar>::infinity();
    Scalar jitter = 0;
    Scalar tau2 = 0;
  };

  MatrixType correlation_matrix(const VectorType& theta) const;
  MatrixType cross_correlation(const Eigen::Ref<const MatrixType>& units) const;
  Profile profile(const VectorType& theta, std::optional<Scalar> fixed_tau2,
                  Eigen::LLT<MatrixType>* factor_out) const;

  MatrixType x_train_;
  MatrixType units_;
  std::vector<MatrixType> pair_sqdist_;  // per-dimension squared differences
  VectorType y_train_;
  VectorType y_std_;
  BasicBoxDomain<Scalar> domain_;
  VectorType theta_;
  Scalar tau2_ = 1;
  Scalar jitter_ = 0;
  Scalar base_jitter_ = 0;
  Scalar max_jitter_ = 0;
  Eigen::LLT<MatrixType> factor_;
  VectorType alpha_;  // (R + jitter I)^-1 y_c
  Scalar y_mean_ = 0;
  Scalar y_sd_ = 1;
  Scalar log_likelihood_ = 0;
  bool degenerate_ = false;
};

using GpModel = BasicGpModel<double>;

template <typename Scalar>
typename BasicGpModel<Scalar>::MatrixType BasicGpModel<Scalar>::correlation_matrix(
    const VectorType& theta) const {
  const Index n = units_.rows();
  MatrixType S = MatrixType::Zero(n, n);
  for (Index k = 0; k < dim(); ++k) S.noalias() += pair_sqdist_[static_cast<std::size_t>(k)] / theta[k];
  return (-S.array()).exp().matrix();
}

template <typename Scalar>
typename BasicGpModel<Scalar>::MatrixType BasicGpModel<Scalar>::cross_correlation(
    const Eigen::Ref<const MatrixType>& units) const {
  const VectorType inv_theta = theta_.cwiseInverse();
  MatrixType C(units.rows(), units_.rows());
  for (Index i = 0; i < units_.rows(); ++i) {
    for (Index r = 0; r < units.rows(); ++r) {
      const Scalar s = ((units.row(r) - units_.row(i)).array().square() * inv_theta.transpose().array()).sum();
      C(r, i) = s == 0 ? 1 + jitter_ : std::exp(-s);
    }
  }
  return C;
}

template <typename Scalar>
typename BasicGpModel<Scalar>::Profile BasicGpModel<Scalar>::profile(
    const VectorType& theta, std::optional<Scalar> fixed_tau2, Eigen::LLT<MatrixType>* factor_out) const {
  const Index n = units_.rows();
  const MatrixType R = correlation_matrix(theta);
  Eigen::LLT<MatrixType> llt;
  for (Scalar jitter = base_jitter_;; jitter *= 10) {
    if (jitter > max_jitter_ * (1 + 1e-9)) break;
    const bool last = jitter == 0 || jitter * 10 > max_jitter_ * (1 + 1e-9);
    MatrixType Rj = R;
    Rj.diagonal().array() += jitter;
    llt.compute(Rj);
    const VectorType diag = llt.matrixLLT().diagonal();
    const Scalar log_det = 2 * diag.array().log().sum();
    const Scalar quad = llt.info() == Eigen::Success ? y_std_.dot(llt.solve(y_std_)) : Scalar(-1);
    if (llt.info() != Eigen::Success || !(diag.array() > 0).all() || !std::isfinite(log_det) ||
        !std::isfinite(quad) || !(quad >= 0)) {
      if (last) break;
      continue;
    }
    Profile p;
    p.jitter = jitter;
    const Scalar log_2pi = std::log(2 * std::numbers::pi_v<Scalar>);
    if (fixed_tau2) {
      p.tau2 = *fixed_tau2;
      p.log_likelihood = -Scalar(0.5) * (quad / p.tau2 + n * std::log(p.tau2) + log_det + n * log_2pi);
    } else {
      p.tau2 = std::max(quad / n, std::numeric_limits<Scalar>::min());
      p.log_likelihood = -Scalar(0.5) * (n + n * std::log(p.tau2) + log_det + n * log_2pi);
    }
    if (factor_out) *factor_out = std::move(llt);
    return p;
  }
  return {};
}

template <typename Scalar>
BasicGpModel<Scalar> BasicGpModel<Scalar>::fit(const MatrixType& X, const VectorType& y,
                                               const BasicBoxDomain<Scalar>& domain,
                                               const GpFitOptions& options) {
  if (X.rows() < 2) throw std::invalid_argument("GP fit: need at least two training points");
  if (X.rows() != y.size() || X.cols() != domain.dim()) {
    throw std::invalid_argument("GP fit: dimension mismatch");
  }
  if (!X.allFinite() || !y.allFinite()) throw std::invalid_argument("GP fit: non-finite training data");

  BasicGpModel m;
  const Index n = X.rows();
  const Index d = X.cols();
  m.x_train_ = X;
  m.y_train_ = y;
  m.domain_ = domain;
  m.units_.resize(n, d);
  for (Index i = 0; i < n; ++i) m.units_.row(i) = domain.to_unit(X.row(i).transpose()).transpose();
  for (Index k = 0; k < d; ++k) {
    const VectorType col = m.units_.col(k);
    m.pair_sqdist_.push_back((col.replicate(1, n) - col.transpose().replicate(n, 1)).array().square().matrix());
  }
  m.base_jitter_ = static_cast<Scalar>(options.jitter);
  m.max_jitter_ = static_cast<Scalar>(options.max_jitter);

  m.y_mean_ = y.mean();
  m.y_sd_ = std::sqrt((y.array() - m.y_mean_).square().sum() / Scalar(n - 1));
  const Scalar scale = std::max(Scalar(1), std::abs(m.y_mean_));
  if (!(m.y_sd_ > std::numeric_limits<Scalar>::epsilon() * scale)) {
    m.degenerate_ = true;
    m.y_sd_ = 0;
    m.theta_ = options.theta ? options.theta->template cast<Scalar>() : VectorType::Ones(d);
    m.tau2_ = options.tau2 ? static_cast<Scalar>(*options.tau2) : Scalar(1);
    m.alpha_ = VectorType::Zero(n);
    return m;
  }
  m.y_std_ = (y.array() - m.y_mean_) / m.y_sd_;

  const std::optional<Scalar> fixed_tau2 =
      options.tau2 ? std::optional<Scalar>(static_cast<Scalar>(*options.tau2)) : std::nullopt;

  VectorType best_theta;
  if (options.theta) {
    if (options.theta->size() != d || !(options.theta->array() > 0).all()) {
      throw std::invalid_argument("GP fit: lengthscales must be positive and match the dimension");
    }
    best_theta = options.theta->template cast<Scalar>();
  } else {
    const VectorType lo = VectorType::Constant(d, std::log(static_cast<Scalar>(options.theta_lower)));
    const VectorType hi = VectorType::Constant(d, std::log(static_cast<Scalar>(options.theta_upper)));
    auto negative_ll = [&](const VectorType& log_theta) {
      return -m.profile(log_theta.array().exp().matrix(), fixed_tau2, nullptr).log_likelihood;
    };

    // Start points in log-lengthscale space: the warm start first, then a
    // Latin hypercube over the box.
    std::vector<VectorType> starts;
    if (options.warm_start && options.warm_start->size() == d) {
      starts.push_back(options.warm_start->template cast<Scalar>().array().log().matrix().cwiseMax(lo).cwiseMin(hi));
    }
    const int n_lhs = std::max(0, options.n_starts - static_cast<int>(starts.size()));
    if (n_lhs > 0) {
      Rng rng(options.seed);
      MatrixType strata(n_lhs, d);
      for (Index k = 0; k < d; ++k) {
        std::vector<int> perm(static_cast<std::size_t>(n_lhs));
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = n_lhs - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i + 1))]);
        for (int i = 0; i < n_lhs; ++i) strata(i, k) = (perm[i] + rng.uniform()) / n_lhs;
      }
      for (int i = 0; i < n_lhs; ++i) starts.push_back(lo + (strata.row(i).transpose().array() * (hi - lo).array()).matrix());
    }

    std::vector<Scalar> start_values;
    for (const auto& s : starts) start_values.push_back(negative_ll(s));
    std::vector<std::size_t> order(starts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return start_values[a] < start_values[b]; });

    VectorType best = starts[order.front()];
    Scalar best_value = start_values[order.front()];
    const std::size_t searched = std::min<std::size_t>(order.size(), static_cast<std::size_t>(std::max(1, options.searched_starts)));
    for (std::size_t k = 0; k < searched; ++k) {
      const auto& s = starts[order[k]];
      if (!std::isfinite(start_values[order[k]])) continue;
      auto result = nelder_mead_box<Scalar>(negative_ll, s, lo, hi, static_cast<Scalar>(options.initial_step),
                                            static_cast<Scalar>(options.tolerance),
                                            static_cast<Scalar>(options.x_tolerance), options.max_evaluations);
      if (result.value < best_value) {
        best_value = result.value;
        best = result.x;
      }
    }
    if (!std::isfinite(best_value)) throw NonPositiveDefinite();
    best_theta = best.array().exp().matrix();
  }

  const Profile p = m.profile(best_theta, fixed_tau2, &m.factor_);
  if (!std::isfinite(p.log_likelihood)) throw NonPositiveDefinite();
  m.theta_ = best_theta;
  m.tau2_ = p.tau2;
  m.jitter_ = p.jitter;
  m.log_likelihood_ = p.log_likelihood;
  m.alpha_ = m.factor_.solve(m.y_std_);
  return m;
}

template <typename Scalar>
Scalar BasicGpModel<Scalar>::log_likelihood_at(const VectorType& theta, std::optional<Scalar> tau2) const {
  if (degenerate_) throw std::logic_error("log_likelihood: constant response has no likelihood");
  return profile(theta, tau2, nullptr).log_likelihood;
}

template <typename Scalar>
typename BasicGpModel<Scalar>::MatrixType BasicGpModel<Scalar>::covariance() const {
  MatrixType K = correlation_matrix(theta_);
  K.diagonal().array() += jitter_;
  return tau2_ * K;
}

template <typename Scalar>
void BasicGpModel<Scalar>::predict(const Eigen::Ref<const MatrixType>& X, VectorType& mu,
                                   VectorType& sigma) const {
  if (X.cols() != dim()) throw std::invalid_argument("GP predict: dimension mismatch");
  const Index m = X.rows();
  if (degenerate_) {
    mu = VectorType::Constant(m, y_mean_);
    sigma = VectorType::Zero(m);
    return;
  }
  MatrixType units(m, dim());
  for (Index r = 0; r < m; ++r) {
    units.row(r) = ((X.row(r) - domain_.lower.transpose()).array() / domain_.width().transpose().array()).matrix();
  }
  const MatrixType C = cross_correlation(units);
  mu = (C * alpha_).array() * y_sd_ + y_mean_;
  const MatrixType V = factor_.matrixL().solve(C.transpose());
  const VectorType reduction = V.colwise().squaredNorm().transpose();
  sigma = ((1 + jitter_ - reduction.array()).max(Scalar(0)) * tau2_).sqrt() * y_sd_;
}

template <typename Scalar>
PredictiveMoments<Scalar> BasicGpModel<Scalar>::predict(const Eigen::Ref<const VectorType>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("GP predict: dimension mismatch");
  VectorType mu, sigma;
  predict(x.transpose(), mu, sigma);
  return {mu[0], sigma[0]};
}

template <typename Scalar>
typename BasicGpModel<Scalar>::VectorType BasicGpModel<Scalar>::mean_gradient(
    const Eigen::Ref<const VectorType>& x) const {
  if (x.size() != dim()) throw std::invalid_argument("GP mean_gradient: dimension mismatch");
  if (degenerate_) return VectorType::Zero(dim());
  const VectorType u = domain_.to_unit(x);
  VectorType grad = VectorType::Zero(dim());
  for (Index i = 0; i < units_.rows(); ++i) {
    const VectorType diff = u - units_.row(i).transpose();
    const Scalar w = alpha_[i] * std::exp(-(diff.array().square() / theta_.array()).sum());
    grad.array() -= 2 * w * diff.array() / theta_.array();
  }
  return (grad.array() * y_sd_ / domain_.width().array()).matrix();
}

}  // namespace cbo

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/regression.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqfilter {

namespace {

void check_weights(const Eigen::Ref<const Eigen::VectorXd>& w, Eigen::Index rows) {
  if (w.size() != rows) throw std::invalid_argument("weight count does not match the number of points");
  double total = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) throw std::invalid_argument("weights must be finite and nonnegative");
    total += w[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("weights must not all be zero");
}

void canonicalize_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

PcaFit weighted_pca(const Eigen::Ref<const Eigen::MatrixXd>& points, const Eigen::Ref<const Eigen::VectorXd>& weights) {
  const Eigen::Index k = points.rows();
  const Eigen::Index d = points.cols();
  if (k < 2 || d < 1) throw std::invalid_argument("weighted_pca: need at least two points");
  check_weights(weights, k);

  PcaFit out;
  out.projections.resize(k, d);

  // Exactly coincident support: the line direction is undefined.
  Eigen::Index first = 0;
  while (weights[first] == 0.0) ++first;
  bool coincident = true;
  for (Eigen::Index i = first + 1; i < k && coincident; ++i) {
    coincident = weights[i] == 0.0 || points.row(i) == points.row(first);
  }

  const double total = weights.sum();
  Eigen::VectorXd mean = coincident ? Eigen::VectorXd(points.row(first).transpose())
                                    : Eigen::VectorXd((points.transpose() * weights) / total);
  const Eigen::MatrixXd centered = points.rowwise() - mean.transpose();

  Eigen::VectorXd direction = Eigen::VectorXd::Unit(d, 0);
  if (!coincident) {
    const Eigen::MatrixXd cov =
        (centered.transpose() * weights.asDiagonal() * centered) / (2.0 * total);
    if (cov.trace() > 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
      direction = eig.eigenvectors().col(d - 1).normalized();
      canonicalize_sign(direction);
    } else {
      coincident = true;
    }
  }

  const Eigen::VectorXd along = centered * direction;
  out.projections = (along * direction.transpose()).rowwise() + mean.transpose();
  out.line = {std::move(mean), std::move(direction)};
  out.degenerate = coincident;
  return out;
}

Eigen::VectorXd gaussian_prior(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const Eigen::Ref<const Eigen::VectorXd>& center,
                               const Eigen::Ref<const Eigen::MatrixXd>& metric) {
  const Eigen::Index d = points.cols();
  if (center.size() != d || metric.rows() != d || metric.cols() != d) {
    throw std::invalid_argument("gaussian_prior: dimension mismatch");
  }
  Eigen::VectorXd w(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Eigen::VectorXd diff = points.row(i).transpose() - center;
    const double form = diff.dot(metric * diff);
    if (form < -1e-12 * (1.0 + diff.squaredNorm() * metric.norm())) {
      throw std::invalid_argument("gaussian_prior: metric is not positive semi-definite");
    }
    w[i] = std::exp(-0.5 * std::max(form, 0.0));
  }
  return w;
}

Eigen::VectorXd gaussian_prior_index(int count, int center_index, double bandwidth) {
  if (count < 1 || center_index < 0 || center_index >= count) {
    throw std::invalid_argument("gaussian_prior_index: center outside the window");
  }
  if (!(bandwidth > 0.0)) throw std::invalid_argument("gaussian_prior_index: bandwidth must be positive");
  Eigen::VectorXd w(count);
  for (int i = 0; i < count; ++i) {
    const double u = (i - center_index) / bandwidth;
    w[i] = std::exp(-0.5 * u * u);
  }
  return w;
}

IrlsFit irls_wpca(const Eigen::Ref<const Eigen::MatrixXd>& points, const Eigen::Ref<const Eigen::VectorXd>& prior,
                  int iterations, double delta) {
  if (iterations < 1) throw std::invalid_argument("irls_wpca: at least one iteration is required");
  if (!(delta > 0.0)) throw std::invalid_argument("irls_wpca: delta must be positive");

  IrlsFit out;
  Eigen::VectorXd w = prior;
  for (int it = 0; it < iterations; ++it) {
    out.fit = weighted_pca(points, w);
    const Eigen::VectorXd residuals = (points - out.fit.projections).rowwise().norm();
    const Eigen::VectorXd damped = residuals.unaryExpr([delta](double r) { return 1.0 / std::max(delta, r); })
                                       .cwiseProduct(prior);
    w = damped / damped.norm();
  }
  out.weights = std::move(w);
  return out;
}

Eigen::MatrixXd gls_solve(const Eigen::Ref<const Eigen::MatrixXd>& predictors,
                          const Eigen::Ref<const Eigen::MatrixXd>& responses,
                          const Eigen::Ref<const Eigen::VectorXd>& weights) {
  if (responses.rows() != predictors.rows()) throw std::invalid_argument("gls_solve: row count mismatch");
  check_weights(weights, predictors.rows());
  const Eigen::MatrixXd xtw = predictors.transpose() * weights.asDiagonal();
  const Eigen::MatrixXd normal = xtw * predictors;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.rank() < normal.rows()) throw std::invalid_argument("gls_solve: X^T W X is singular");
  return lu.solve(xtw * responses);
}

std::string_view to_string(FilterMethod m) {
  switch (m) {
    case FilterMethod::pca: return "pca";
    case FilterMethod::wpca: return "wpca";
    case FilterMethod::irls: return "irls";
  }
  return "?";
}

std::string_view to_string(PriorMode m) { return m == PriorMode::index ? "index" : "tangent"; }

FilterMethod parse_filter_method(std::string_view s) {
  if (s == "pca") return FilterMethod::pca;
  if (s == "wpca") return FilterMethod::wpca;
  if (s == "irls") return FilterMethod::irls;
  throw std::invalid_argument("unknown filter method '" + std::string(s) + "'");
}

PriorMode parse_prior_mode(std::string_view s) {
  if (s == "index") return PriorMode::index;
  if (s == "tangent") return PriorMode::tangent;
  throw std::invalid_argument("unknown prior mode '" + std::string(s) + "'");
}

double FilterConfig::effective_bandwidth() const {
  if (bandwidth) return *bandwidth;
  return prior == PriorMode::index ? (window - 1) / 4.0 : kDefaultTangentBandwidth;
}

void FilterConfig::validate() const {
  if (window < 3 || window % 2 == 0) {
    throw std::invalid_argument("window must be odd and at least 3 (got " + std::to_string(window) + ")");
  }
  if (method == FilterMethod::irls && irls_iterations < 1) {
    throw std::invalid_argument("irls iterations must be at least 1");
  }
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (bandwidth && !(*bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
}

}  // namespace dqfilter

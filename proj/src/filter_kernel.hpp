// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Per-window kernel shared by the parallel filter and its serial reference.

#pragma once

#include "dqfilter/manifold.hpp"
#include "dqfilter/regression.hpp"

#include <algorithm>
#include <span>

namespace dqfilter::detail {

// R^3 as a flat manifold.
inline Vec3 log_at(const Vec3& x, const Vec3& q) { return q - x; }
inline Vec3 exp_at(const Vec3& x, const Vec3& s) { return x + s; }

template <class Point>
Point filter_point(std::span<const Point> poses, std::size_t i, const FilterConfig& cfg) {
  using dqfilter::exp_at;
  using dqfilter::log_at;
  using detail::exp_at;
  using detail::log_at;
  using Tangent = decltype(log_at(poses[i], poses[i]));

  const auto n = static_cast<std::ptrdiff_t>(poses.size());
  const std::ptrdiff_t half = cfg.window / 2;
  const auto idx = static_cast<std::ptrdiff_t>(i);
  const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, idx - half);
  const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, idx + half);
  const auto count = static_cast<Eigen::Index>(hi - lo + 1);
  const auto center = static_cast<Eigen::Index>(idx - lo);
  if (count < 2) return poses[i];

  const Point& base = poses[i];
  Eigen::MatrixXd tangents(count, Tangent::RowsAtCompileTime);
  for (Eigen::Index k = 0; k < count; ++k) {
    tangents.row(k) = log_at(base, poses[static_cast<std::size_t>(lo + k)]).transpose();
  }

  Eigen::VectorXd prior;
  if (cfg.method == FilterMethod::pca) {
    prior = Eigen::VectorXd::Ones(count);
  } else if (cfg.prior == PriorMode::index) {
    prior = gaussian_prior_index(static_cast<int>(count), static_cast<int>(center), cfg.effective_bandwidth());
  } else {
    const double h = cfg.effective_bandwidth();
    const Eigen::MatrixXd metric =
        Eigen::MatrixXd::Identity(Tangent::RowsAtCompileTime, Tangent::RowsAtCompileTime) / (h * h);
    prior = gaussian_prior(tangents, tangents.row(center).transpose(), metric);
  }

  const PcaFit fit = cfg.method == FilterMethod::irls
                         ? irls_wpca(tangents, prior, cfg.irls_iterations, cfg.delta).fit
                         : weighted_pca(tangents, prior);
  return exp_at(base, Tangent(fit.projections.row(center).transpose()));
}

}  // namespace dqfilter::detail

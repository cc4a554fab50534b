// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Principal-component local regression on tangent spaces.
//
// Point sets are K x D matrices with one sample per row. Weighted fits use the
// weighted mean and the weighted covariance
//
//   C = 1 / (2 sum(w)) (X - mu)^T W (X - mu),
//
// whose dominant eigenvector is the direction of the fitted line.

#pragma once

#include "dqfilter/dual_quaternion.hpp"
#include "dqfilter/manifold.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace dqfilter {

struct PrincipalLine {
  Eigen::VectorXd mean;       // weighted centroid
  Eigen::VectorXd direction;  // unit; first nonzero component positive
};

struct PcaFit {
  PrincipalLine line;
  Eigen::MatrixXd projections;  // K x D, each row on the line
  bool degenerate{false};       // all weighted points coincide
};

/// Weighted principal line of `points` (K >= 2 rows). Weights must be finite,
/// nonnegative and not all zero; violations throw std::invalid_argument. When
/// every positively weighted point is identical the fit is flagged degenerate
/// and uses direction e1.
PcaFit weighted_pca(const Eigen::Ref<const Eigen::MatrixXd>& points, const Eigen::Ref<const Eigen::VectorXd>& weights);

/// w_i = exp(-1/2 (x_i - c)^T M (x_i - c)) for a positive semi-definite M.
Eigen::VectorXd gaussian_prior(const Eigen::Ref<const Eigen::MatrixXd>& points,
                               const Eigen::Ref<const Eigen::VectorXd>& center,
                               const Eigen::Ref<const Eigen::MatrixXd>& metric);

/// Gaussian prior over sample index offsets: M = 1/h^2 on the scalar offset
/// k - center_index, k = 0..count-1.
Eigen::VectorXd gaussian_prior_index(int count, int center_index, double bandwidth);

inline constexpr double kDefaultIrlsDelta = 1e-6;
inline constexpr int kDefaultIrlsIterations = 5;

struct IrlsFit {
  PcaFit fit;               // fit of the last round
  Eigen::VectorXd weights;  // weights after the last update, unit L2 norm
};

/// Iteratively reweighted weighted PCA. Each round fits with the current
/// weights, sets w_k = 1 / max(delta, |x_k - proj_k|), damps by the prior
/// (w <- w * w0 / |w * w0|) and repeats. Throws std::invalid_argument for
/// iterations < 1 or delta <= 0.
IrlsFit irls_wpca(const Eigen::Ref<const Eigen::MatrixXd>& points, const Eigen::Ref<const Eigen::VectorXd>& prior,
                  int iterations = kDefaultIrlsIterations, double delta = kDefaultIrlsDelta);

/// Weighted least squares beta = (X^T W X)^-1 X^T W Y for predictors X (K x p)
/// and responses Y (K x q). Throws std::invalid_argument when X^T W X is
/// singular.
Eigen::MatrixXd gls_solve(const Eigen::Ref<const Eigen::MatrixXd>& predictors,
                          const Eigen::Ref<const Eigen::MatrixXd>& responses,
                          const Eigen::Ref<const Eigen::VectorXd>& weights);

enum class FilterMethod { pca, wpca, irls };
enum class PriorMode { index, tangent };

std::string_view to_string(FilterMethod m);
std::string_view to_string(PriorMode m);
FilterMethod parse_filter_method(std::string_view s);
PriorMode parse_prior_mode(std::string_view s);

inline constexpr double kDefaultTangentBandwidth = 0.1;

struct FilterConfig {
  int window{19};  // odd, >= 3
  FilterMethod method{FilterMethod::irls};
  int irls_iterations{kDefaultIrlsIterations};
  double delta{kDefaultIrlsDelta};
  PriorMode prior{PriorMode::index};
  /// Gaussian prior bandwidth h (metric I/h^2). Defaults to (window-1)/4 in
  /// index mode and kDefaultTangentBandwidth in tangent mode.
  std::optional<double> bandwidth;

  double effective_bandwidth() const;
  /// Throws std::invalid_argument on an even or too small window, a
  /// non-positive delta or bandwidth, or fewer than one IRLS iteration.
  void validate() const;
};

/// Local regression filter. For every pose the neighbourhood of `window`
/// samples (clipped at the sequence ends) is mapped to the tangent space at
/// that pose, a principal line is fitted, and the projection of the pose
/// itself is mapped back with the exponential map. Windows are processed in
/// parallel; output order follows input order.
std::vector<UnitDualQuaternion> filter_trajectory(std::span<const UnitDualQuaternion> poses, const FilterConfig& cfg);
std::vector<UnitQuaternion> filter_trajectory(std::span<const UnitQuaternion> rotations, const FilterConfig& cfg);
std::vector<Vec3> filter_trajectory(std::span<const Vec3> points, const FilterConfig& cfg);
/// Split space: rotations on H1 and translations on R^3, independently.
std::vector<RigidPose> filter_trajectory(std::span<const RigidPose> poses, const FilterConfig& cfg);

/// Single-threaded reference implementations of the filters above, kept for
/// testing and benchmarking. Results are bit-identical to the parallel ones.
namespace serial {
std::vector<UnitDualQuaternion> filter_trajectory(std::span<const UnitDualQuaternion> poses, const FilterConfig& cfg);
std::vector<UnitQuaternion> filter_trajectory(std::span<const UnitQuaternion> rotations, const FilterConfig& cfg);
std::vector<Vec3> filter_trajectory(std::span<const Vec3> points, const FilterConfig& cfg);
std::vector<RigidPose> filter_trajectory(std::span<const RigidPose> poses, const FilterConfig& cfg);
}  // namespace serial

}  // namespace dqfilter

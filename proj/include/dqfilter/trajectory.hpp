// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Synthetic benchmark trajectories, noise injection, error metrics and a
// linear Kalman baseline.

#pragma once

#include "dqfilter/dual_quaternion.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace dqfilter {

using PoseTrajectory = std::vector<RigidPose>;

std::vector<UnitDualQuaternion> to_dual(std::span<const RigidPose> poses);
PoseTrajectory from_dual(std::span<const UnitDualQuaternion> poses);

/// Seedable generator. Uniform doubles are built from the top 53 bits of
/// each 64-bit draw, so streams replicate across standard libraries.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// [0, 1)
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// Natural cubic spline through values at the uniform knots 0, 1, ..., n-1.
class NaturalCubicSpline {
 public:
  explicit NaturalCubicSpline(std::span<const double> values);

  double operator()(double u) const;
  double derivative(double u) const;
  double second_derivative(double u) const;
  double last_knot() const { return static_cast<double>(values_.size() - 1); }

 private:
  std::size_t segment(double u) const;

  std::vector<double> values_;
  std::vector<double> second_;  // second derivatives at the knots
};

inline constexpr int kSplineControls = 5;

struct SplineSpec {
  std::array<Vec3, kSplineControls> control_axes;
  std::array<double, kSplineControls> control_angles{};
  std::array<Vec3, kSplineControls> control_translations;
  int sample_count{500};
  std::uint64_t seed{0};

  /// Random unit axes, angles in [0, 2pi] and translations in [0, 1]^3.
  static SplineSpec random(std::uint64_t seed, int sample_count = 500);
  void validate() const;
};

/// Channel-wise natural splines over axis, angle and translation with knot
/// parameters 0..4.
class PoseSpline {
 public:
  explicit PoseSpline(const SplineSpec& spec);

  /// Interpolated axis (re-normalized) and angle at parameter u.
  AxisAngle rotation_at(double u) const;
  Vec3 translation_at(double u) const;
  RigidPose pose_at(double u) const;
  double last_knot() const { return angle_.last_knot(); }

 private:
  std::array<NaturalCubicSpline, 3> axis_;
  NaturalCubicSpline angle_;
  std::array<NaturalCubicSpline, 3> translation_;
};

/// sample_count poses at uniformly spaced spline parameters covering all knots.
PoseTrajectory generate_spline_trajectory(const SplineSpec& spec);

struct NoiseSpec {
  double sigma{0.02};
  double outlier_fraction{0.05};
  double outlier_sigma{0.2};
  std::uint64_t seed{0};
  /// Outlier noise is added on top of the base noise; otherwise it replaces it.
  bool outlier_additive{true};

  void validate() const;
};

struct NoisyTrajectory {
  PoseTrajectory poses;
  std::vector<std::size_t> outliers;  // sorted sample indices
};

/// Uniform [-sigma, sigma] noise on the rotation angle, on each axis component
/// (axis re-normalized afterwards) and on each translation component.
/// round(outlier_fraction * n) samples, chosen by a seeded permutation, get
/// outlier noise of half-width outlier_sigma on the same channels.
NoisyTrajectory add_noise(std::span<const RigidPose> trajectory, const NoiseSpec& spec);

struct ChannelSummary {
  double median{0.0};
  double mean{0.0};
  double stddev{0.0};  // population
  double q1{0.0};
  double q3{0.0};
  double min{0.0};
  double max{0.0};
};

/// Linear-interpolated quantiles over the sorted sample.
ChannelSummary summarize(std::span<const double> values);

struct ErrorReport {
  std::vector<double> angle_deg;  // geodesic rotation angle between estimate and truth
  std::vector<double> axis_deg;   // angle between rotation axes, sign-insensitive
  std::vector<double> trans;      // Euclidean translation error
  ChannelSummary angle;
  ChannelSummary axis;
  ChannelSummary translation;
};

/// Per-sample and summary errors. Throws std::invalid_argument on a length
/// mismatch.
ErrorReport evaluate(std::span<const RigidPose> estimate, std::span<const RigidPose> ground_truth);

struct KalmanNoise {
  double process;
  double measurement;
};

inline constexpr KalmanNoise kKalmanRotation{0.5, 2.0};
inline constexpr KalmanNoise kKalmanTranslation{0.2, 1.0};

/// Random-walk (constant position) Kalman filter on one scalar signal.
class ScalarKalman {
 public:
  explicit ScalarKalman(KalmanNoise noise);

  /// Consumes a measurement and returns the filtered estimate. The first
  /// measurement initializes the state with variance equal to the
  /// measurement variance.
  double update(double measurement);
  double state() const { return x_; }
  double gain() const { return gain_; }
  double variance() const { return p_; }

 private:
  KalmanNoise noise_;
  bool initialized_{false};
  double x_{0.0};
  double p_{0.0};
  double gain_{0.0};
};

/// Causal per-component Kalman smoothing of quaternion components
/// (measurements hemisphere-aligned to the running estimate, output
/// re-normalized) and translation components.
PoseTrajectory kalman_baseline(std::span<const RigidPose> trajectory, KalmanNoise rotation = kKalmanRotation,
                               KalmanNoise translation = kKalmanTranslation);

}  // namespace dqfilter

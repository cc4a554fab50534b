// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/trajectory.hpp"

#include "dqfilter/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dqfilter {

std::vector<UnitDualQuaternion> to_dual(std::span<const RigidPose> poses) {
  std::vector<UnitDualQuaternion> out;
  out.reserve(poses.size());
  for (const auto& p : poses) out.push_back(from_pose(p));
  return out;
}

PoseTrajectory from_dual(std::span<const UnitDualQuaternion> poses) {
  PoseTrajectory out;
  out.reserve(poses.size());
  for (const auto& q : poses) out.push_back(to_pose(q));
  return out;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

// Natural cubic spline with unit knot spacing:
// M[i-1] + 4 M[i] + M[i+1] = 6 (y[i+1] - 2 y[i] + y[i-1]),  M[0] = M[n-1] = 0.
NaturalCubicSpline::NaturalCubicSpline(std::span<const double> values)
    : values_(values.begin(), values.end()), second_(values.size(), 0.0) {
  if (values_.empty()) throw std::invalid_argument("NaturalCubicSpline: no knots");
  const std::size_t n = values_.size();
  if (n < 3) return;

  const std::size_t m = n - 2;  // interior unknowns
  std::vector<double> diag(m, 4.0), rhs(m);
  for (std::size_t i = 0; i < m; ++i) rhs[i] = 6.0 * (values_[i + 2] - 2.0 * values_[i + 1] + values_[i]);
  // Thomas algorithm, unit off-diagonals.
  for (std::size_t i = 1; i < m; ++i) {
    const double f = 1.0 / diag[i - 1];
    diag[i] -= f;
    rhs[i] -= f * rhs[i - 1];
  }
  second_[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) second_[i + 1] = (rhs[i] - second_[i + 2]) / diag[i];
}

std::size_t NaturalCubicSpline::segment(double u) const {
  if (values_.size() < 2) return 0;
  const double clamped = std::clamp(u, 0.0, last_knot());
  return std::min(static_cast<std::size_t>(clamped), values_.size() - 2);
}

double NaturalCubicSpline::operator()(double u) const {
  if (values_.size() == 1) return values_[0];
  const std::size_t i = segment(u);
  const double t = u - static_cast<double>(i);
  const double s = 1.0 - t;
  return s * values_[i] + t * values_[i + 1] + ((s * s * s - s) * second_[i] + (t * t * t - t) * second_[i + 1]) / 6.0;
}

double NaturalCubicSpline::derivative(double u) const {
  if (values_.size() == 1) return 0.0;
  const std::size_t i = segment(u);
  const double t = u - static_cast<double>(i);
  const double s = 1.0 - t;
  return values_[i + 1] - values_[i] + ((1.0 - 3.0 * s * s) * second_[i] + (3.0 * t * t - 1.0) * second_[i + 1]) / 6.0;
}

double NaturalCubicSpline::second_derivative(double u) const {
  if (values_.size() == 1) return 0.0;
  const std::size_t i = segment(u);
  const double t = u - static_cast<double>(i);
  return (1.0 - t) * second_[i] + t * second_[i + 1];
}

SplineSpec SplineSpec::random(std::uint64_t seed, int sample_count) {
  Rng rng(seed);
  SplineSpec spec;
  spec.seed = seed;
  spec.sample_count = sample_count;
  for (int k = 0; k < kSplineControls; ++k) {
    Vec3 v;
    do {
      v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    } while (v.norm() > 1.0 || v.norm() < 1e-3);
    spec.control_axes[k] = v.normalized();
    spec.control_angles[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    spec.control_translations[k] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
  }
  return spec;
}

void SplineSpec::validate() const {
  if (sample_count < 2) throw std::invalid_argument("spline trajectory needs at least two samples");
  for (const auto& a : control_axes) {
    if (!(a.norm() > 0.0) || !a.allFinite()) throw std::invalid_argument("spline control axis must be nonzero");
  }
}

namespace {

template <class Get>
NaturalCubicSpline channel(Get get) {
  std::array<double, kSplineControls> v{};
  for (int k = 0; k < kSplineControls; ++k) v[k] = get(k);
  return NaturalCubicSpline(v);
}

}  // namespace

PoseSpline::PoseSpline(const SplineSpec& spec)
    : axis_{channel([&](int k) { return spec.control_axes[k].normalized().x(); }),
            channel([&](int k) { return spec.control_axes[k].normalized().y(); }),
            channel([&](int k) { return spec.control_axes[k].normalized().z(); })},
      angle_(channel([&](int k) { return spec.control_angles[k]; })),
      translation_{channel([&](int k) { return spec.control_translations[k].x(); }),
                   channel([&](int k) { return spec.control_translations[k].y(); }),
                   channel([&](int k) { return spec.control_translations[k].z(); })} {}

AxisAngle PoseSpline::rotation_at(double u) const {
  const Vec3 a{axis_[0](u), axis_[1](u), axis_[2](u)};
  const double n = a.norm();
  return {n > 1e-12 ? Vec3(a / n) : Vec3::UnitX(), angle_(u)};
}

Vec3 PoseSpline::translation_at(double u) const {
  return {translation_[0](u), translation_[1](u), translation_[2](u)};
}

RigidPose PoseSpline::pose_at(double u) const {
  return {from_axis_angle(rotation_at(u)), translation_at(u)};
}

PoseTrajectory generate_spline_trajectory(const SplineSpec& spec) {
  spec.validate();
  const PoseSpline spline(spec);
  const double span = spline.last_knot();
  PoseTrajectory out;
  out.reserve(static_cast<std::size_t>(spec.sample_count));
  for (int j = 0; j < spec.sample_count; ++j) {
    out.push_back(spline.pose_at(span * j / (spec.sample_count - 1)));
  }
  return out;
}

void NoiseSpec::validate() const {
  if (!(sigma >= 0.0) || !(outlier_sigma >= 0.0)) throw std::invalid_argument("noise sigmas must be nonnegative");
  if (!(outlier_fraction >= 0.0 && outlier_fraction <= 1.0)) {
    throw std::invalid_argument("outlier fraction must lie in [0, 1]");
  }
}

namespace {

struct PoseNoise {
  double angle;
  Vec3 axis;
  Vec3 translation;
};

PoseNoise draw_noise(Rng& rng, double sigma) {
  PoseNoise n;
  n.angle = rng.uniform(-sigma, sigma);
  for (int c = 0; c < 3; ++c) n.axis[c] = rng.uniform(-sigma, sigma);
  for (int c = 0; c < 3; ++c) n.translation[c] = rng.uniform(-sigma, sigma);
  return n;
}

RigidPose perturb(const RigidPose& p, const PoseNoise& n) {
  const AxisAngle aa = to_axis_angle(p.rotation);
  Vec3 axis = aa.axis + n.axis;
  const double len = axis.norm();
  axis = len > 0.0 ? Vec3(axis / len) : aa.axis;
  return {from_axis_angle({axis, aa.angle + n.angle}), p.translation + n.translation};
}

constexpr std::uint64_t kPermutationStream = 0x9e3779b97f4a7c15ULL;

}  // namespace

NoisyTrajectory add_noise(std::span<const RigidPose> trajectory, const NoiseSpec& spec) {
  spec.validate();
  const std::size_t n = trajectory.size();
  NoisyTrajectory out;

  const auto n_out = static_cast<std::size_t>(std::llround(spec.outlier_fraction * static_cast<double>(n)));
  if (n_out > 0) {
    Rng perm_rng(spec.seed ^ kPermutationStream);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[perm_rng.below(i + 1)]);
    out.outliers.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_out));
    std::sort(out.outliers.begin(), out.outliers.end());
  }

  Rng rng(spec.seed);
  out.poses.reserve(n);
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    PoseNoise noise = draw_noise(rng, spec.sigma);
    if (next < out.outliers.size() && out.outliers[next] == i) {
      ++next;
      const PoseNoise extra = draw_noise(rng, spec.outlier_sigma);
      if (spec.outlier_additive) {
        noise.angle += extra.angle;
        noise.axis += extra.axis;
        noise.translation += extra.translation;
      } else {
        noise = extra;
      }
    }
    const bool silent = noise.angle == 0.0 && noise.axis.isZero(0.0) && noise.translation.isZero(0.0);
    out.poses.push_back(silent ? trajectory[i] : perturb(trajectory[i], noise));
  }
  return out;
}

ChannelSummary summarize(std::span<const double> values) {
  ChannelSummary s;
  if (values.empty()) return s;
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(v.size()));
  return s;
}

namespace {

constexpr double kDegrees = 180.0 / std::numbers::pi;

Vec3 rotation_axis(const UnitQuaternion& r) {
  return to_screw(from_pose({r, Vec3::Zero()})).direction;
}

}  // namespace

ErrorReport evaluate(std::span<const RigidPose> estimate, std::span<const RigidPose> ground_truth) {
  if (estimate.size() != ground_truth.size()) {
    throw std::invalid_argument("trajectory lengths differ: estimate has " + std::to_string(estimate.size()) +
                                " poses, ground truth has " + std::to_string(ground_truth.size()));
  }
  const auto n = static_cast<std::ptrdiff_t>(estimate.size());
  ErrorReport rep;
  rep.angle_deg.resize(estimate.size());
  rep.axis_deg.resize(estimate.size());
  rep.trans.resize(estimate.size());

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const RigidPose& e = estimate[k];
    const RigidPose& g = ground_truth[k];
    // 2 acos(|<r_est, r_gt>|) through the chord form, exact for equal inputs.
    const Eigen::Vector4d a = e.rotation.coeffs();
    const Eigen::Vector4d b = a.dot(g.rotation.coeffs()) < 0.0 ? Eigen::Vector4d(-g.rotation.coeffs())
                                                                : g.rotation.coeffs();
    rep.angle_deg[k] = 4.0 * std::atan2((a - b).norm(), (a + b).norm()) * kDegrees;
    const Vec3 ae = rotation_axis(e.rotation);
    const Vec3 ag = rotation_axis(g.rotation);
    rep.axis_deg[k] = std::atan2(ae.cross(ag).norm(), std::abs(ae.dot(ag))) * kDegrees;
    rep.trans[k] = (e.translation - g.translation).norm();
  }
  rep.angle = summarize(rep.angle_deg);
  rep.axis = summarize(rep.axis_deg);
  rep.translation = summarize(rep.trans);
  return rep;
}

ScalarKalman::ScalarKalman(KalmanNoise noise) : noise_(noise) {
  if (!(noise.process > 0.0) || !(noise.measurement >= 0.0)) {
    throw std::invalid_argument("Kalman covariances must be positive");
  }
}

double ScalarKalman::update(double z) {
  if (!initialized_) {
    initialized_ = true;
    x_ = z;
    p_ = noise_.measurement;
    gain_ = 1.0;
    return x_;
  }
  const double predicted = p_ + noise_.process;
  gain_ = predicted / (predicted + noise_.measurement);
  x_ += gain_ * (z - x_);
  p_ = (1.0 - gain_) * predicted;
  return x_;
}

PoseTrajectory kalman_baseline(std::span<const RigidPose> trajectory, KalmanNoise rotation, KalmanNoise translation) {
  if (!(rotation.measurement > 0.0) || !(translation.measurement > 0.0)) {
    throw std::invalid_argument("Kalman covariances must be positive");
  }
  std::array<ScalarKalman, 4> rot{ScalarKalman(rotation), ScalarKalman(rotation), ScalarKalman(rotation),
                                  ScalarKalman(rotation)};
  std::array<ScalarKalman, 3> trans{ScalarKalman(translation), ScalarKalman(translation),
                                    ScalarKalman(translation)};
  PoseTrajectory out;
  out.reserve(trajectory.size());
  Quaternion estimate = Quaternion::identity();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    Quaternion z = trajectory[i].rotation.quaternion();
    if (i > 0 && dot(estimate, z) < 0.0) z = -z;
    const Eigen::Vector4d zc = z.coeffs();
    Eigen::Vector4d xc;
    for (int c = 0; c < 4; ++c) xc[c] = rot[c].update(zc[c]);
    estimate = Quaternion::from_coeffs(xc);
    Vec3 t;
    for (int c = 0; c < 3; ++c) t[c] = trans[c].update(trajectory[i].translation[c]);
    out.push_back({UnitQuaternion(estimate), t});
  }
  return out;
}

}  // namespace dqfilter

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Random instance generators and independent oracles for the test suites.
// Nothing here calls into the code path it is used to check.

#pragma once

#include "dqfilter/dual_quaternion.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

namespace dqfilter::testing {

using Rand = std::mt19937_64;

inline double uniform(Rand& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_unit_vec3(Rand& rng) {
  std::normal_distribution<double> n;
  Vec3 v;
  do {
    v = {n(rng), n(rng), n(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline Vec3 random_vec3(Rand& rng, double half_width) {
  return {uniform(rng, -half_width, half_width), uniform(rng, -half_width, half_width),
          uniform(rng, -half_width, half_width)};
}

inline Quaternion random_quaternion(Rand& rng) {
  return {uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)};
}

inline UnitQuaternion random_unit_quaternion(Rand& rng) {
  std::normal_distribution<double> n;
  return UnitQuaternion(Quaternion{n(rng), n(rng), n(rng), n(rng)});
}

inline RigidPose random_pose(Rand& rng, double translation = 5.0) {
  return {random_unit_quaternion(rng), random_vec3(rng, translation)};
}

inline UnitDualQuaternion random_unit_dq(Rand& rng, double translation = 5.0) {
  const RigidPose p = random_pose(rng, translation);
  const Quaternion& r = p.rotation.quaternion();
  return UnitDualQuaternion::assume_unit({r, 0.5 * (Quaternion::pure(p.translation) * r)});
}

/// Pure dual quaternion whose real part has norm in [lo, hi].
inline DualQuaternion random_tangent(Rand& rng, double lo, double hi, double dual_scale = 2.0) {
  const Vec3 a = uniform(rng, lo, hi) * random_unit_vec3(rng);
  const Vec3 b = random_vec3(rng, dual_scale);
  return {Quaternion::pure(a), Quaternion::pure(b)};
}

/// Left-multiplication matrix: quat_mul(a, b) == left_matrix(a) * b.
inline Eigen::Matrix4d left_matrix(const Quaternion& a) {
  Eigen::Matrix4d m;
  // clang-format off
  m << a.w, -a.x, -a.y, -a.z,
       a.x,  a.w, -a.z,  a.y,
       a.y,  a.z,  a.w, -a.x,
       a.z, -a.y,  a.x,  a.w;
  // clang-format on
  return m;
}

inline Eigen::Matrix3d skew(const Vec3& v) {
  Eigen::Matrix3d s;
  // clang-format off
  s <<      0, -v.z(),  v.y(),
        v.z(),      0, -v.x(),
       -v.y(),  v.x(),      0;
  // clang-format on
  return s;
}

/// Rodrigues rotation matrix for a rotation by `angle` about unit `axis`.
inline Eigen::Matrix3d rodrigues(const Vec3& axis, double angle) {
  const Eigen::Matrix3d k = skew(axis);
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

/// Rotation matrix of a unit quaternion through its axis-angle form.
inline Eigen::Matrix3d rotation_oracle(const Quaternion& q) {
  const Vec3 v{q.x, q.y, q.z};
  const double n = v.norm();
  if (n == 0.0) return Eigen::Matrix3d::Identity();
  return rodrigues(v / n, 2.0 * std::atan2(n, q.w));
}

inline Eigen::Matrix4d homogeneous(const Eigen::Matrix3d& r, const Vec3& t) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return m;
}

/// sum_{k<terms} q^k / k!
inline Quaternion quat_exp_series(const Quaternion& q, int terms = 30) {
  Quaternion sum = Quaternion::identity();
  Quaternion term = Quaternion::identity();
  for (int k = 1; k < terms; ++k) {
    term = (term * q) * (1.0 / k);
    sum += term;
  }
  return sum;
}

/// sum_{k<terms} Q^k / k!
inline DualQuaternion dq_exp_series(const DualQuaternion& q, int terms = 40) {
  DualQuaternion sum = DualQuaternion::identity();
  DualQuaternion term = DualQuaternion::identity();
  for (int k = 1; k < terms; ++k) {
    term = (term * q) * (1.0 / k);
    sum += term;
  }
  return sum;
}

/// SE(3) matrix exponential of the twist that corresponds to a pure dual
/// quaternion a + eps b: angular velocity 2a, linear velocity 2b.
inline Eigen::Matrix4d se3_exp_oracle(const DualQuaternion& t) {
  Eigen::Matrix4d xi = Eigen::Matrix4d::Zero();
  xi.topLeftCorner<3, 3>() = skew(2.0 * t.real.vec());
  xi.topRightCorner<3, 1>() = 2.0 * t.dual.vec();
  return xi.exp();
}

/// Max absolute difference between q and the closer of ±p.
inline double sign_agnostic_diff(const Vec8& q, const Vec8& p) {
  return std::min((q - p).cwiseAbs().maxCoeff(), (q + p).cwiseAbs().maxCoeff());
}

}  // namespace dqfilter::testing

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Exponential and logarithm maps at arbitrary base points, obtained from the
// maps at the identity by parallel transport:
//
//   exp_x(s) = x exp(x^-1 s),   log_x(q) = x log(x^-1 q).
//
// Tangent vectors are kept in ambient coordinates at the base (R^4 for unit
// quaternions, R^8 for unit dual quaternions). The split space H1 x R^3 uses
// the rotation tangent followed by the plain translation difference (R^7).

#pragma once

#include "dqfilter/dual_quaternion.hpp"

#include <Eigen/Core>

#include <variant>

namespace dqfilter {

using Vec4 = Eigen::Vector4d;
using Vec7 = Eigen::Matrix<double, 7, 1>;

inline bool operator==(const RigidPose& a, const RigidPose& b) {
  return a.rotation == b.rotation && a.translation == b.translation;
}

// Rotation manifold H1.
UnitQuaternion hemisphere_align(const UnitQuaternion& reference, const UnitQuaternion& q);
Vec4 log_at(const UnitQuaternion& x, const UnitQuaternion& q);
UnitQuaternion exp_at(const UnitQuaternion& x, const Vec4& s);
double geodesic_distance(const UnitQuaternion& x, const UnitQuaternion& q);

// Pose manifold DH1. Alignment compares the real parts only.
UnitDualQuaternion hemisphere_align(const UnitDualQuaternion& reference, const UnitDualQuaternion& q);
Vec8 log_at(const UnitDualQuaternion& x, const UnitDualQuaternion& q);
UnitDualQuaternion exp_at(const UnitDualQuaternion& x, const Vec8& s);
/// |log(x^-1 q)|, the norm of the tangent pulled back to the identity.
/// Symmetric and left invariant; equals |log_at(x, q)| on H1.
double geodesic_distance(const UnitDualQuaternion& x, const UnitDualQuaternion& q);

// Split space H1 x R^3; the translation is treated as Euclidean.
RigidPose hemisphere_align(const RigidPose& reference, const RigidPose& q);
Vec7 log_at(const RigidPose& x, const RigidPose& q);
RigidPose exp_at(const RigidPose& x, const Vec7& s);
double geodesic_distance(const RigidPose& x, const RigidPose& q);

/// A point on one of the three supported pose spaces.
using ManifoldPoint = std::variant<UnitQuaternion, UnitDualQuaternion, RigidPose>;

struct TangentAtBase {
  ManifoldPoint base;
  Eigen::VectorXd coords;  // 4, 8 or 7 entries
};

// Type-erased front end. Mixing spaces throws std::invalid_argument, as does
// exp_at with a tangent whose base differs from x.
TangentAtBase log_at(const ManifoldPoint& x, const ManifoldPoint& q);
ManifoldPoint exp_at(const ManifoldPoint& x, const TangentAtBase& s);
ManifoldPoint hemisphere_align(const ManifoldPoint& reference, const ManifoldPoint& q);
double geodesic_distance(const ManifoldPoint& x, const ManifoldPoint& q);

}  // namespace dqfilter

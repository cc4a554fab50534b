// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/quaternion.hpp"

#include <numbers>
#include <stdexcept>

namespace dqfilter {

namespace {
constexpr double kSmallAngle = 1e-8;
}

UnitQuaternion::UnitQuaternion(const Quaternion& q) {
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitQuaternion: cannot normalize a zero or non-finite quaternion");
  }
  q_ = q * (1.0 / n);
}

AxisAngle AxisAngle::canonical() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, two_pi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += two_pi;
  return {axis, a};
}

UnitQuaternion from_axis_angle(const AxisAngle& aa) {
  if (std::abs(aa.axis.norm() - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("from_axis_angle: rotation axis is not unit length");
  }
  const double h = 0.5 * aa.angle;
  const double s = std::sin(h);
  return UnitQuaternion::assume_unit({std::cos(h), s * aa.axis.x(), s * aa.axis.y(), s * aa.axis.z()});
}

AxisAngle to_axis_angle(const UnitQuaternion& r) {
  const Vec3 v = r.vec();
  const double n = v.norm();
  if (n == 0.0) {
    return {Vec3::UnitX(), r.w() > 0.0 ? 0.0 : 2.0 * std::numbers::pi};
  }
  return {v / n, 2.0 * std::atan2(n, r.w())};
}

Vec3 rotate_point(const UnitQuaternion& r, const Vec3& u) {
  const Quaternion& q = r.quaternion();
  return (q * Quaternion::pure(u) * conjugate(q)).vec();
}

Eigen::Matrix3d to_rotation_matrix(const UnitQuaternion& r) {
  const double w = r.w(), x = r.x(), y = r.y(), z = r.z();
  Eigen::Matrix3d m;
  // clang-format off
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
       2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y);
  // clang-format on
  return m;
}

UnitQuaternion quat_exp(const Quaternion& t) {
  if (std::abs(t.w) > kUnitTolerance) {
    throw std::invalid_argument("quat_exp: argument must be a pure quaternion");
  }
  const Vec3 v = t.vec();
  const double phi = v.norm();
  const double sinc = phi < kSmallAngle ? 1.0 - phi * phi / 6.0 : std::sin(phi) / phi;
  const Vec3 im = sinc * v;
  return UnitQuaternion::assume_unit({std::cos(phi), im.x(), im.y(), im.z()});
}

Quaternion quat_log(const UnitQuaternion& r) {
  const Vec3 v = r.vec();
  const double n = v.norm();
  if (n == 0.0) {
    // Axis is undefined; -1 maps to a half-turn about x.
    return r.w() > 0.0 ? Quaternion{} : Quaternion{0.0, std::numbers::pi, 0.0, 0.0};
  }
  const double phi = std::atan2(n, r.w());
  // phi / sin(phi) with sin(phi) = n on the unit sphere
  const double scale = (n < kSmallAngle && r.w() > 0.0) ? 1.0 + phi * phi / 6.0 : phi / n;
  return Quaternion::pure(scale * v);
}

UnitQuaternion compose(std::span<const UnitQuaternion> factors) {
  Quaternion acc = Quaternion::identity();
  int since_normalize = 0;
  for (const auto& f : factors) {
    acc = acc * f.quaternion();
    if (++since_normalize == kRenormalizeEvery) {
      acc = UnitQuaternion(acc).quaternion();
      since_normalize = 0;
    }
  }
  return UnitQuaternion(acc);
}

}  // namespace dqfilter

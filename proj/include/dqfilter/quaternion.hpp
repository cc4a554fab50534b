// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Quaternion algebra, rotations and the exp/log maps at the identity.
// Component order is scalar-first (w, x, y, z) everywhere, including all
// file formats.

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <span>

namespace dqfilter {

using Vec3 = Eigen::Vector3d;

struct Quaternion {
  double w{0.0};
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion identity() { return {1.0, 0.0, 0.0, 0.0}; }
  static Quaternion pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }

  Vec3 vec() const { return {x, y, z}; }
  Eigen::Vector4d coeffs() const { return {w, x, y, z}; }
  static Quaternion from_coeffs(const Eigen::Vector4d& c) {
    return {c[0], c[1], c[2], c[3]};
  }

  double squared_norm() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(squared_norm()); }

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }

/// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
constexpr Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return quat_mul(a, b);
}

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

/// Euclidean inner product in R^4.
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// Quaternion of unit length. Construction normalizes; throws
/// std::invalid_argument on a zero or non-finite input.
class UnitQuaternion {
 public:
  UnitQuaternion() = default;
  explicit UnitQuaternion(const Quaternion& q);

  /// Wraps a quaternion the caller guarantees is unit (within 1e-9).
  static UnitQuaternion assume_unit(const Quaternion& q) {
    UnitQuaternion u;
    u.q_ = q;
    return u;
  }

  const Quaternion& quaternion() const { return q_; }
  double w() const { return q_.w; }
  double x() const { return q_.x; }
  double y() const { return q_.y; }
  double z() const { return q_.z; }
  Vec3 vec() const { return q_.vec(); }
  Eigen::Vector4d coeffs() const { return q_.coeffs(); }

  UnitQuaternion inverse() const { return assume_unit(conjugate(q_)); }
  UnitQuaternion operator-() const { return assume_unit(-q_); }

  friend UnitQuaternion operator*(const UnitQuaternion& a, const UnitQuaternion& b) {
    return assume_unit(a.q_ * b.q_);
  }
  friend bool operator==(const UnitQuaternion&, const UnitQuaternion&) = default;

 private:
  Quaternion q_{Quaternion::identity()};
};

inline constexpr double kUnitTolerance = 1e-9;

/// Rotation by `angle` radians about a unit `axis`.
struct AxisAngle {
  Vec3 axis{1.0, 0.0, 0.0};
  double angle{0.0};

  /// Angle wrapped to (-pi, pi].
  AxisAngle canonical() const;
};

/// [cos(angle/2), sin(angle/2) axis]. Throws std::invalid_argument when the
/// axis is not unit within 1e-9.
UnitQuaternion from_axis_angle(const AxisAngle& aa);

/// Axis and angle of a rotation quaternion with angle in [0, 2pi]; the axis
/// defaults to x for the identity.
AxisAngle to_axis_angle(const UnitQuaternion& r);

/// Sandwich product r p r̄ on the pure quaternion of u.
Vec3 rotate_point(const UnitQuaternion& r, const Vec3& u);

/// 3x3 rotation matrix of r.
Eigen::Matrix3d to_rotation_matrix(const UnitQuaternion& r);

/// Exponential of a pure quaternion [0, phi v] -> [cos phi, sin phi v].
/// Throws std::invalid_argument when |w| > 1e-9.
UnitQuaternion quat_exp(const Quaternion& t);

/// Principal logarithm r -> [0, phi v] with phi = atan2(|vec|, w) in [0, pi].
Quaternion quat_log(const UnitQuaternion& r);

/// Ordered product q[0] q[1] ... q[n-1], renormalized after every
/// kRenormalizeEvery factors.
inline constexpr int kRenormalizeEvery = 16;
UnitQuaternion compose(std::span<const UnitQuaternion> factors);

}  // namespace dqfilter

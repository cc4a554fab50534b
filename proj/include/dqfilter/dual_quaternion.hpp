// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Dual numbers, dual quaternions and rigid displacements.
//
// A dual quaternion Q = r + eps s is stored as the pair (real, dual); its
// eight coordinates (q1..q8) are (r.w, r.x, r.y, r.z, s.w, s.x, s.y, s.z).
// Unit dual quaternions satisfy r r̄ = 1 and r s̄ + s r̄ = 0 and represent
// rigid displacements; a pose (r, t) is encoded as Q = r + eps (1/2) t r.

#pragma once

#include "dqfilter/quaternion.hpp"

#include <Eigen/Core>

namespace dqfilter {

using Vec8 = Eigen::Matrix<double, 8, 1>;

/// r + eps s with eps^2 = 0.
struct DualNumber {
  double re{0.0};
  double du{0.0};

  friend constexpr DualNumber operator+(DualNumber a, DualNumber b) { return {a.re + b.re, a.du + b.du}; }
  friend constexpr DualNumber operator-(DualNumber a, DualNumber b) { return {a.re - b.re, a.du - b.du}; }
  friend constexpr bool operator==(const DualNumber&, const DualNumber&) = default;

  /// r - eps s
  constexpr DualNumber conjugate() const { return {re, -du}; }
};

constexpr DualNumber dual_mul(DualNumber a, DualNumber b) {
  return {a.re * b.re, a.re * b.du + a.du * b.re};
}
constexpr DualNumber operator*(DualNumber a, DualNumber b) { return dual_mul(a, b); }

/// sin(phi + eps p) = sin(phi) + eps p cos(phi)
DualNumber dual_sin(DualNumber x);
/// cos(phi + eps p) = cos(phi) - eps p sin(phi)
DualNumber dual_cos(DualNumber x);

struct DualQuaternion {
  Quaternion real{};
  Quaternion dual{};

  static constexpr DualQuaternion identity() { return {Quaternion::identity(), Quaternion{}}; }

  Vec8 coeffs() const;
  static DualQuaternion from_coeffs(const Vec8& c);

  DualQuaternion& operator+=(const DualQuaternion& o) {
    real += o.real;
    dual += o.dual;
    return *this;
  }
  DualQuaternion& operator-=(const DualQuaternion& o) {
    real -= o.real;
    dual -= o.dual;
    return *this;
  }
  DualQuaternion& operator*=(double s) {
    real *= s;
    dual *= s;
    return *this;
  }
  DualQuaternion operator-() const { return {-real, -dual}; }

  friend bool operator==(const DualQuaternion&, const DualQuaternion&) = default;
};

inline DualQuaternion operator+(DualQuaternion a, const DualQuaternion& b) { return a += b; }
inline DualQuaternion operator-(DualQuaternion a, const DualQuaternion& b) { return a -= b; }
inline DualQuaternion operator*(DualQuaternion a, double s) { return a *= s; }
inline DualQuaternion operator*(double s, DualQuaternion a) { return a *= s; }

/// (A.r B.r, A.r B.s + A.s B.r)
DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b);
inline DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) { return dq_mul(a, b); }

/// Scalar dual number times dual quaternion.
DualQuaternion operator*(DualNumber s, const DualQuaternion& q);

/// r̄ + eps s̄
DualQuaternion quaternion_conjugate(const DualQuaternion& q);
/// r - eps s
DualQuaternion dual_conjugate(const DualQuaternion& q);
/// r̄ - eps s̄, the conjugate used on the right of the point sandwich.
DualQuaternion combined_conjugate(const DualQuaternion& q);

/// Scalar value of r r̄ - 1 (first unit constraint residual).
double rotation_norm_residual(const DualQuaternion& q);
/// Scalar value of r s̄ + s r̄ (second unit constraint), equal to 2<r, s>.
double dual_orthogonality_residual(const DualQuaternion& q);

/// Tolerance for accepting externally supplied dual quaternions.
inline constexpr double kInputTolerance = 1e-6;

class UnitDualQuaternion {
 public:
  UnitDualQuaternion() = default;

  /// Validates q against both unit constraints within `tolerance` and
  /// projects it onto the constraint set. Throws std::invalid_argument when
  /// either residual exceeds the tolerance.
  static UnitDualQuaternion from_raw(const DualQuaternion& q, double tolerance = kInputTolerance);

  /// Projects any dual quaternion with a nonzero real part onto the quadric:
  /// divide by |r|, then remove the component of s parallel to r.
  static UnitDualQuaternion project(const DualQuaternion& q);

  /// Wraps a value the caller guarantees satisfies both constraints.
  static UnitDualQuaternion assume_unit(const DualQuaternion& q) {
    UnitDualQuaternion u;
    u.q_ = q;
    return u;
  }

  const DualQuaternion& dual_quaternion() const { return q_; }
  const Quaternion& real() const { return q_.real; }
  const Quaternion& dual() const { return q_.dual; }
  Vec8 coeffs() const { return q_.coeffs(); }

  UnitQuaternion rotation() const { return UnitQuaternion::assume_unit(q_.real); }

  /// Group inverse, the quaternion conjugate r̄ + eps s̄.
  UnitDualQuaternion inverse() const { return assume_unit(quaternion_conjugate(q_)); }
  UnitDualQuaternion operator-() const { return assume_unit(-q_); }

  friend UnitDualQuaternion operator*(const UnitDualQuaternion& a, const UnitDualQuaternion& b) {
    return assume_unit(a.q_ * b.q_);
  }
  friend bool operator==(const UnitDualQuaternion&, const UnitDualQuaternion&) = default;

 private:
  DualQuaternion q_{DualQuaternion::identity()};
};

/// Rotation followed by translation: u -> R u + t.
struct RigidPose {
  UnitQuaternion rotation{};
  Vec3 translation{Vec3::Zero()};
};

/// Q = r + eps (1/2) t r
UnitDualQuaternion from_pose(const RigidPose& p);
/// t = 2 s r̄
RigidPose to_pose(const UnitDualQuaternion& q);

/// Sandwich Q (1 + eps u) Q̄^ = 1 + eps (r u r̄ + t).
Vec3 transform_point(const UnitDualQuaternion& q, const Vec3& u);

/// Screw (Chasles) parameters: rotation by `angle` about the line with
/// Plücker coordinates (direction, moment) and translation `pitch` along it.
struct ScrewParameters {
  Vec3 direction{Vec3::UnitX()};
  Vec3 moment{Vec3::Zero()};
  double angle{0.0};
  double pitch{0.0};
};

/// Returns q or -q, whichever has a nonnegative real scalar part.
UnitDualQuaternion canonical_hemisphere(const UnitDualQuaternion& q);

/// Screw decomposition with angle in [0, pi]. When sin(angle/2) < 1e-7 the
/// displacement is treated as a pure translation: angle 0, pitch |t|,
/// direction t/|t| (x if t = 0), moment 0.
ScrewParameters to_screw(const UnitDualQuaternion& q);

/// [cos(Theta/2), sin(Theta/2) V] with Theta = angle + eps pitch and
/// V = direction + eps moment. Throws std::invalid_argument when the
/// direction is not unit within 1e-9.
UnitDualQuaternion from_screw(const ScrewParameters& sp);

/// Exponential of a pure dual quaternion (both scalar parts zero). Throws
/// std::invalid_argument when either scalar part exceeds 1e-9.
UnitDualQuaternion dq_exp(const DualQuaternion& t);

/// Logarithm V Theta/2 on the principal branch (real part angle in [0, pi));
/// dq_exp(dq_log(Q)) = Q away from the cut locus at real part -1.
DualQuaternion dq_log(const UnitDualQuaternion& q);

/// 4x4 homogeneous matrix [R t; 0 1].
Eigen::Matrix4d to_matrix(const UnitDualQuaternion& q);

}  // namespace dqfilter

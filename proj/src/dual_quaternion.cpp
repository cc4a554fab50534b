// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/dual_quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace dqfilter {

namespace {

// Below this real-part angle dq_exp switches from the cubic polynomial to the
// screw closed form with Taylor coefficients.
constexpr double kExpSeriesSwitch = 1e-6;
// to_screw treats the displacement as a pure translation below this sin(theta/2).
constexpr double kScrewDegenerate = 1e-7;

}  // namespace

DualNumber dual_sin(DualNumber x) { return {std::sin(x.re), x.du * std::cos(x.re)}; }
DualNumber dual_cos(DualNumber x) { return {std::cos(x.re), -x.du * std::sin(x.re)}; }

Vec8 DualQuaternion::coeffs() const {
  Vec8 c;
  c << real.w, real.x, real.y, real.z, dual.w, dual.x, dual.y, dual.z;
  return c;
}

DualQuaternion DualQuaternion::from_coeffs(const Vec8& c) {
  return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
}

DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.real * b.real, a.real * b.dual + a.dual * b.real};
}

DualQuaternion operator*(DualNumber s, const DualQuaternion& q) {
  return {s.re * q.real, s.re * q.dual + s.du * q.real};
}

DualQuaternion quaternion_conjugate(const DualQuaternion& q) {
  return {conjugate(q.real), conjugate(q.dual)};
}

DualQuaternion dual_conjugate(const DualQuaternion& q) { return {q.real, -q.dual}; }

DualQuaternion combined_conjugate(const DualQuaternion& q) {
  return {conjugate(q.real), -conjugate(q.dual)};
}

double rotation_norm_residual(const DualQuaternion& q) { return q.real.squared_norm() - 1.0; }

double dual_orthogonality_residual(const DualQuaternion& q) {
  return (q.real * conjugate(q.dual) + q.dual * conjugate(q.real)).w;
}

UnitDualQuaternion UnitDualQuaternion::from_raw(const DualQuaternion& q, double tolerance) {
  const double norm_err = std::abs(q.real.norm() - 1.0);
  const double orth_err = std::abs(2.0 * dot(q.real, q.dual));
  if (!(norm_err <= tolerance) || !(orth_err <= tolerance)) {
    throw std::invalid_argument("dual quaternion violates the unit constraints (|r|-1 = " +
                                std::to_string(norm_err) + ", 2<r,s> = " + std::to_string(orth_err) + ")");
  }
  return project(q);
}

UnitDualQuaternion UnitDualQuaternion::project(const DualQuaternion& q) {
  const double n = q.real.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("UnitDualQuaternion: real part is zero or non-finite");
  }
  const Quaternion r = q.real * (1.0 / n);
  Quaternion s = q.dual * (1.0 / n);
  s -= r * dot(r, s);
  return assume_unit({r, s});
}

UnitDualQuaternion from_pose(const RigidPose& p) {
  const Quaternion& r = p.rotation.quaternion();
  return UnitDualQuaternion::assume_unit({r, 0.5 * (Quaternion::pure(p.translation) * r)});
}

RigidPose to_pose(const UnitDualQuaternion& q) {
  const Vec3 t = 2.0 * (q.dual() * conjugate(q.real())).vec();
  return {q.rotation(), t};
}

Vec3 transform_point(const UnitDualQuaternion& q, const Vec3& u) {
  const DualQuaternion p{Quaternion::identity(), Quaternion::pure(u)};
  const DualQuaternion& d = q.dual_quaternion();
  return (d * p * combined_conjugate(d)).dual.vec();
}

UnitDualQuaternion canonical_hemisphere(const UnitDualQuaternion& q) {
  return q.real().w < 0.0 ? -q : q;
}

ScrewParameters to_screw(const UnitDualQuaternion& q) {
  const UnitDualQuaternion c = canonical_hemisphere(q);
  const Quaternion& r = c.real();
  const Vec3 t = 2.0 * (c.dual() * conjugate(r)).vec();
  const Vec3 qv = r.vec();
  const double n = qv.norm();

  ScrewParameters sp;
  if (n < kScrewDegenerate) {
    const double len = t.norm();
    sp.angle = 0.0;
    sp.pitch = len;
    sp.direction = len > 0.0 ? Vec3(t / len) : Vec3::UnitX();
    sp.moment = Vec3::Zero();
    return sp;
  }
  const Vec3 v = qv / n;
  const double cot_half = r.w / n;
  sp.direction = v;
  sp.angle = 2.0 * std::atan2(n, r.w);
  sp.pitch = t.dot(v);
  sp.moment = 0.5 * (t.cross(v) + cot_half * v.cross(t.cross(v)));
  return sp;
}

UnitDualQuaternion from_screw(const ScrewParameters& sp) {
  if (std::abs(sp.direction.norm() - 1.0) > kUnitTolerance) {
    throw std::invalid_argument("from_screw: screw direction is not unit length");
  }
  const DualNumber half{0.5 * sp.angle, 0.5 * sp.pitch};
  const DualQuaternion axis{Quaternion::pure(sp.direction), Quaternion::pure(sp.moment)};
  DualQuaternion q = dual_sin(half) * axis;
  const DualNumber c = dual_cos(half);
  q.real.w += c.re;
  q.dual.w += c.du;
  return UnitDualQuaternion::assume_unit(q);
}

UnitDualQuaternion dq_exp(const DualQuaternion& t) {
  if (std::abs(t.real.w) > kUnitTolerance || std::abs(t.dual.w) > kUnitTolerance) {
    throw std::invalid_argument("dq_exp: argument must be a pure dual quaternion");
  }
  const Vec3 a = t.real.vec();
  const Vec3 b = t.dual.vec();
  const double w = a.norm();

  if (w < kExpSeriesSwitch) {
    // Screw closed form [cos Phi, sin Phi V] written in a, b with Taylor
    // substitutes for sin(w)/w and (cos(w) - sin(w)/w)/w^2.
    const double w2 = w * w;
    const double sinc = 1.0 - w2 / 6.0;
    const double k = -1.0 / 3.0 + w2 / 30.0;
    const double ab = a.dot(b);
    const Vec3 real_v = sinc * a;
    const Vec3 dual_v = sinc * b + (ab * k) * a;
    return UnitDualQuaternion::assume_unit(
        {{std::cos(w), real_v.x(), real_v.y(), real_v.z()}, {-ab * sinc, dual_v.x(), dual_v.y(), dual_v.z()}});
  }

  const double sw = std::sin(w);
  const double cw = std::cos(w);
  const double c0 = 0.5 * (2.0 * cw + w * sw);
  const double c1 = -(w * cw - 3.0 * sw) / (2.0 * w);
  const double c2 = sw / (2.0 * w);
  const double c3 = -(w * cw - sw) / (2.0 * w * w * w);

  const DualQuaternion t2 = t * t;
  const DualQuaternion t3 = t2 * t;
  DualQuaternion q = c1 * t + c2 * t2 + c3 * t3;
  q.real.w += c0;
  return UnitDualQuaternion::assume_unit(q);
}

DualQuaternion dq_log(const UnitDualQuaternion& q) {
  // Principal branch phi in [0, pi). At the cut locus (real part near -1)
  // the log of -q is used instead.
  const bool at_cut = q.real().w < 0.0 && q.real().vec().norm() < 1e-6;
  const UnitDualQuaternion c = at_cut ? -q : q;
  const Quaternion& r = c.real();
  const Vec3 t = 2.0 * (c.dual() * conjugate(r)).vec();
  const Vec3 qv = r.vec();
  const double n = qv.norm();  // sin(phi)
  const double phi = std::atan2(n, r.w);

  // Dual part of V Theta/2 = (1/2)[(t.v)v + phi (t x v) + phi cot(phi) (t - (t.v)v)]
  // rewritten in qv = sin(phi) v so that it stays finite as phi -> 0.
  double alpha;  // phi cot(phi)
  double beta;   // (1 - phi cot(phi)) / sin^2(phi)
  double gamma;  // phi / sin(phi)
  if (n < 1e-6) {
    const double p2 = phi * phi;
    alpha = 1.0 - p2 / 3.0;
    beta = 1.0 / 3.0 + 2.0 * p2 / 15.0;
    gamma = 1.0 + p2 / 6.0;
  } else {
    alpha = phi * r.w / n;
    beta = (1.0 - alpha) / (n * n);
    gamma = phi / n;
  }
  const Vec3 dual_v = 0.5 * (alpha * t + (beta * t.dot(qv)) * qv + gamma * t.cross(qv));
  return {Quaternion::pure(gamma * qv), Quaternion::pure(dual_v)};
}

Eigen::Matrix4d to_matrix(const UnitDualQuaternion& q) {
  const RigidPose p = to_pose(q);
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = to_rotation_matrix(p.rotation);
  m.topRightCorner<3, 1>() = p.translation;
  return m;
}

}  // namespace dqfilter

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqfilter {

namespace {

double purity_tolerance(double scale) { return kUnitTolerance * std::max(1.0, scale); }

}  // namespace

UnitQuaternion hemisphere_align(const UnitQuaternion& reference, const UnitQuaternion& q) {
  return dot(reference.quaternion(), q.quaternion()) < 0.0 ? -q : q;
}

Vec4 log_at(const UnitQuaternion& x, const UnitQuaternion& q) {
  if (q == x || q == -x) return Vec4::Zero();
  const UnitQuaternion rel = x.inverse() * hemisphere_align(x, q);
  return (x.quaternion() * quat_log(rel)).coeffs();
}

UnitQuaternion exp_at(const UnitQuaternion& x, const Vec4& s) {
  if (s.isZero(0.0)) return x;
  Quaternion local = conjugate(x.quaternion()) * Quaternion::from_coeffs(s);
  if (std::abs(local.w) > purity_tolerance(s.norm())) {
    throw std::invalid_argument("exp_at: vector is not tangent at the base point");
  }
  local.w = 0.0;
  return x * quat_exp(local);
}

double geodesic_distance(const UnitQuaternion& x, const UnitQuaternion& q) {
  return quat_log(x.inverse() * hemisphere_align(x, q)).norm();
}

UnitDualQuaternion hemisphere_align(const UnitDualQuaternion& reference, const UnitDualQuaternion& q) {
  return dot(reference.real(), q.real()) < 0.0 ? -q : q;
}

Vec8 log_at(const UnitDualQuaternion& x, const UnitDualQuaternion& q) {
  if (q == x || q == -x) return Vec8::Zero();
  const UnitDualQuaternion rel = x.inverse() * hemisphere_align(x, q);
  return (x.dual_quaternion() * dq_log(rel)).coeffs();
}

UnitDualQuaternion exp_at(const UnitDualQuaternion& x, const Vec8& s) {
  if (s.isZero(0.0)) return x;
  DualQuaternion local = quaternion_conjugate(x.dual_quaternion()) * DualQuaternion::from_coeffs(s);
  const double tol = purity_tolerance(s.norm());
  if (std::abs(local.real.w) > tol || std::abs(local.dual.w) > tol) {
    throw std::invalid_argument("exp_at: vector is not tangent at the base point");
  }
  local.real.w = 0.0;
  local.dual.w = 0.0;
  return x * dq_exp(local);
}

double geodesic_distance(const UnitDualQuaternion& x, const UnitDualQuaternion& q) {
  return dq_log(x.inverse() * hemisphere_align(x, q)).coeffs().norm();
}

RigidPose hemisphere_align(const RigidPose& reference, const RigidPose& q) {
  return {hemisphere_align(reference.rotation, q.rotation), q.translation};
}

Vec7 log_at(const RigidPose& x, const RigidPose& q) {
  Vec7 out;
  out.head<4>() = log_at(x.rotation, q.rotation);
  out.tail<3>() = q.translation - x.translation;
  return out;
}

RigidPose exp_at(const RigidPose& x, const Vec7& s) {
  return {exp_at(x.rotation, Vec4(s.head<4>())), x.translation + s.tail<3>()};
}

double geodesic_distance(const RigidPose& x, const RigidPose& q) {
  return std::hypot(geodesic_distance(x.rotation, q.rotation), (q.translation - x.translation).norm());
}

// Type-erased front end.

namespace {

template <class T>
const T& same_space(const ManifoldPoint& p) {
  const T* v = std::get_if<T>(&p);
  if (v == nullptr) throw std::invalid_argument("manifold points belong to different spaces");
  return *v;
}

}  // namespace

TangentAtBase log_at(const ManifoldPoint& x, const ManifoldPoint& q) {
  return std::visit(
      [&](const auto& base) -> TangentAtBase {
        using T = std::decay_t<decltype(base)>;
        return {x, Eigen::VectorXd(log_at(base, same_space<T>(q)))};
      },
      x);
}

ManifoldPoint exp_at(const ManifoldPoint& x, const TangentAtBase& s) {
  if (!(s.base == x)) throw std::invalid_argument("exp_at: tangent vector is attached to a different base point");
  return std::visit(
      [&](const auto& base) -> ManifoldPoint {
        using Coords = decltype(log_at(base, base));
        if (s.coords.size() != Coords::RowsAtCompileTime) {
          throw std::invalid_argument("exp_at: tangent has the wrong dimension");
        }
        return exp_at(base, Coords(s.coords));
      },
      x);
}

ManifoldPoint hemisphere_align(const ManifoldPoint& reference, const ManifoldPoint& q) {
  return std::visit(
      [&](const auto& ref) -> ManifoldPoint {
        using T = std::decay_t<decltype(ref)>;
        return hemisphere_align(ref, same_space<T>(q));
      },
      reference);
}

double geodesic_distance(const ManifoldPoint& x, const ManifoldPoint& q) {
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        return geodesic_distance(a, same_space<T>(q));
      },
      x);
}

}  // namespace dqfilter

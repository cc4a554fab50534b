// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/manifold.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace dqfilter;
using namespace dqfilter::testing;
using std::numbers::pi;

TEST_CASE("quaternion log_at/exp_at round trip") {
  Rand rng(31);
  for (int i = 0; i < 1000; ++i) {
    const UnitQuaternion x = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
    const Vec4 s = log_at(x, q);
    // Tangent at x: x^-1 s is pure.
    CHECK(std::abs((conjugate(x.quaternion()) * Quaternion::from_coeffs(s)).w) < 1e-12);
    const UnitQuaternion back = exp_at(x, s);
    CHECK(std::min((back.coeffs() - q.coeffs()).norm(), (back.coeffs() + q.coeffs()).norm()) < 1e-10);
    CHECK(exp_at(x, Vec4::Zero()) == x);
    CHECK(log_at(x, x).norm() < 1e-15);
  }
}

TEST_CASE("dual quaternion log_at/exp_at round trip") {
  Rand rng(32);
  for (int i = 0; i < 1000; ++i) {
    const UnitDualQuaternion x = random_unit_dq(rng), q = random_unit_dq(rng);
    const Vec8 s = log_at(x, q);
    const DualQuaternion local = quaternion_conjugate(x.dual_quaternion()) * DualQuaternion::from_coeffs(s);
    CHECK(std::abs(local.real.w) < 1e-12);
    CHECK(std::abs(local.dual.w) < 1e-11);
    CHECK(sign_agnostic_diff(exp_at(x, s).coeffs(), q.coeffs()) < 1e-10);
    CHECK(log_at(x, x).norm() < 1e-14);
  }
}

TEST_CASE("split log_at/exp_at round trip") {
  Rand rng(33);
  for (int i = 0; i < 500; ++i) {
    const RigidPose x = random_pose(rng), q = random_pose(rng);
    const Vec7 s = log_at(x, q);
    CHECK((s.tail<3>() - (q.translation - x.translation)).norm() == 0.0);
    const RigidPose back = exp_at(x, s);
    CHECK((back.translation - q.translation).norm() < 1e-12);
    CHECK(std::min((back.rotation.coeffs() - q.rotation.coeffs()).norm(),
                   (back.rotation.coeffs() + q.rotation.coeffs()).norm()) < 1e-10);
  }
}

TEST_CASE("exp_at rejects vectors that are not tangent") {
  Rand rng(34);
  const UnitQuaternion x = random_unit_quaternion(rng);
  CHECK_THROWS_AS(exp_at(x, x.coeffs()), std::invalid_argument);
  const UnitDualQuaternion y = random_unit_dq(rng);
  CHECK_THROWS_AS(exp_at(y, y.coeffs()), std::invalid_argument);
}

TEST_CASE("geodesic distance") {
  for (double th : {0.0, 0.1, 1.0, 2.0, 3.0}) {
    const UnitQuaternion r = from_axis_angle({Vec3::UnitY(), th});
    CHECK(geodesic_distance(UnitQuaternion{}, r) == doctest::Approx(th / 2).epsilon(1e-12));
    const UnitDualQuaternion d = from_pose({r, Vec3::Zero()});
    CHECK(geodesic_distance(UnitDualQuaternion{}, d) == doctest::Approx(th / 2).epsilon(1e-12));
  }
  // A rotation by more than pi is closer through -q.
  const UnitQuaternion far = from_axis_angle({Vec3::UnitY(), 2 * pi - 0.4});
  CHECK(geodesic_distance(UnitQuaternion{}, far) == doctest::Approx(0.2));
  // Pure translation: |log| = |t| / 2.
  CHECK(geodesic_distance(UnitDualQuaternion{}, from_pose({UnitQuaternion{}, Vec3(0, 3, 4)})) ==
        doctest::Approx(2.5));
  CHECK(geodesic_distance(RigidPose{}, RigidPose{from_axis_angle({Vec3::UnitX(), 1.2}), Vec3(0.3, 0, 0.4)}) ==
        doctest::Approx(std::hypot(0.6, 0.5)));
}

TEST_CASE("distance is symmetric and left invariant") {
  Rand rng(35);
  for (int i = 0; i < 1000; ++i) {
    const UnitQuaternion x = random_unit_quaternion(rng), q = random_unit_quaternion(rng),
                         g = random_unit_quaternion(rng);
    const double d = geodesic_distance(x, q);
    CHECK(geodesic_distance(q, x) == doctest::Approx(d).epsilon(1e-10));
    CHECK(geodesic_distance(g * x, g * q) == doctest::Approx(d).epsilon(1e-9));
    CHECK(d <= pi / 2 + 1e-12);

    const UnitDualQuaternion a = random_unit_dq(rng), b = random_unit_dq(rng), h = random_unit_dq(rng);
    const double e = geodesic_distance(a, b);
    CHECK(geodesic_distance(b, a) == doctest::Approx(e).epsilon(1e-9));
    CHECK(geodesic_distance(h * a, h * b) == doctest::Approx(e).epsilon(1e-9));
    CHECK(geodesic_distance(a, a) < 1e-14);
  }
}

TEST_CASE("triangle inequality on rotations and split poses") {
  Rand rng(36);
  for (int i = 0; i < 2000; ++i) {
    const UnitQuaternion a = random_unit_quaternion(rng), b = random_unit_quaternion(rng),
                         c = random_unit_quaternion(rng);
    CHECK(geodesic_distance(a, c) <= geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-12);
    const RigidPose p = random_pose(rng), q = random_pose(rng), r = random_pose(rng);
    CHECK(geodesic_distance(p, r) <= geodesic_distance(p, q) + geodesic_distance(q, r) + 1e-12);
  }
}

TEST_CASE("geodesic midpoint") {
  Rand rng(37);
  for (int i = 0; i < 500; ++i) {
    const UnitQuaternion x = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
    const UnitQuaternion m = exp_at(x, Vec4(0.5 * log_at(x, q)));
    const double d = geodesic_distance(x, q);
    CHECK(geodesic_distance(x, m) == doctest::Approx(d / 2).epsilon(1e-9));
    CHECK(geodesic_distance(m, q) == doctest::Approx(d / 2).epsilon(1e-9));

    const UnitDualQuaternion a = random_unit_dq(rng), b = random_unit_dq(rng);
    const UnitDualQuaternion mid = exp_at(a, Vec8(0.5 * log_at(a, b)));
    const double e = geodesic_distance(a, b);
    CHECK(geodesic_distance(a, mid) == doctest::Approx(e / 2).epsilon(1e-9));
    CHECK(geodesic_distance(mid, b) == doctest::Approx(e / 2).epsilon(1e-9));
  }
}

TEST_CASE("hemisphere alignment") {
  Rand rng(38);
  for (int i = 0; i < 500; ++i) {
    const UnitQuaternion r = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
    const UnitQuaternion a = hemisphere_align(r, q);
    CHECK(dot(r.quaternion(), a.quaternion()) >= 0.0);
    CHECK(hemisphere_align(r, a) == a);
    CHECK((hemisphere_align(r, -q) == a));

    const UnitDualQuaternion x = random_unit_dq(rng), y = random_unit_dq(rng);
    const UnitDualQuaternion b = hemisphere_align(x, y);
    CHECK(dot(x.real(), b.real()) >= 0.0);
    CHECK(hemisphere_align(x, b) == b);

    const RigidPose p = random_pose(rng), s = random_pose(rng);
    CHECK(hemisphere_align(p, s).translation == s.translation);
  }
}

TEST_CASE("variant front end") {
  Rand rng(39);
  const ManifoldPoint x = random_unit_dq(rng), q = random_unit_dq(rng);
  const TangentAtBase s = log_at(x, q);
  CHECK(s.coords.size() == 8);
  CHECK(s.coords == Eigen::VectorXd(log_at(std::get<UnitDualQuaternion>(x), std::get<UnitDualQuaternion>(q))));
  const ManifoldPoint back = exp_at(x, s);
  CHECK(sign_agnostic_diff(std::get<UnitDualQuaternion>(back).coeffs(), std::get<UnitDualQuaternion>(q).coeffs()) <
        1e-10);
  CHECK(geodesic_distance(x, q) == geodesic_distance(std::get<1>(x), std::get<1>(q)));

  const ManifoldPoint r = random_unit_quaternion(rng);
  CHECK(log_at(r, r).coords.size() == 4);
  CHECK(log_at(ManifoldPoint{random_pose(rng)}, ManifoldPoint{random_pose(rng)}).coords.size() == 7);
  CHECK_THROWS_AS(log_at(x, r), std::invalid_argument);
  CHECK_THROWS_AS(hemisphere_align(x, r), std::invalid_argument);
  CHECK_THROWS_AS(geodesic_distance(r, x), std::invalid_argument);

  // A tangent vector only applies at its own base point.
  CHECK_THROWS_AS(exp_at(q, s), std::invalid_argument);
  TangentAtBase wrong = s;
  wrong.coords.conservativeResize(5);
  CHECK_THROWS_AS(exp_at(x, wrong), std::invalid_argument);
}

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/manifold.hpp"
#include "dqfilter/regression.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <vector>

using namespace dqfilter;
using namespace dqfilter::testing;

namespace {

std::vector<FilterConfig> all_configs() {
  std::vector<FilterConfig> out;
  for (FilterMethod m : {FilterMethod::pca, FilterMethod::wpca, FilterMethod::irls}) {
    for (int k : {3, 7, 19}) {
      FilterConfig cfg;
      cfg.method = m;
      cfg.window = k;
      out.push_back(cfg);
    }
  }
  FilterConfig tangent;
  tangent.prior = PriorMode::tangent;
  tangent.bandwidth = 0.5;
  out.push_back(tangent);
  return out;
}

/// exp(k t) for k = 0..n-1: a geodesic through the identity.
std::vector<UnitDualQuaternion> screw_sequence(const DualQuaternion& step, int n, const UnitDualQuaternion& start) {
  std::vector<UnitDualQuaternion> out;
  for (int k = 0; k < n; ++k) out.push_back(start * dq_exp(static_cast<double>(k) * step));
  return out;
}

std::vector<UnitDualQuaternion> noisy_sequence(Rand& rng, int n) {
  std::vector<UnitDualQuaternion> out;
  const DualQuaternion step = random_tangent(rng, 0.01, 0.05, 0.05);
  for (int k = 0; k < n; ++k) {
    out.push_back(dq_exp(static_cast<double>(k) * step) * dq_exp(random_tangent(rng, 0.0, 0.05, 0.05)));
  }
  return out;
}

}  // namespace

TEST_CASE("constant trajectories are fixed points") {
  Rand rng(51);
  const UnitDualQuaternion q = random_unit_dq(rng);
  const UnitQuaternion r = random_unit_quaternion(rng);
  const RigidPose p = random_pose(rng);
  const Vec3 v = random_vec3(rng, 3);
  for (const FilterConfig& cfg : all_configs()) {
    for (int n : {1, 2, 5, 40}) {
      const std::vector<UnitDualQuaternion> dq(n, q);
      for (const auto& out : filter_trajectory(std::span(dq), cfg)) CHECK(out == q);
      const std::vector<UnitQuaternion> rot(n, r);
      for (const auto& out : filter_trajectory(std::span(rot), cfg)) CHECK(out == r);
      const std::vector<RigidPose> split(n, p);
      for (const auto& out : filter_trajectory(std::span(split), cfg)) CHECK(out == p);
      const std::vector<Vec3> pts(n, v);
      for (const auto& out : filter_trajectory(std::span(pts), cfg)) CHECK(out == v);
    }
  }
}

TEST_CASE("uniform screw motion is preserved") {
  Rand rng(52);
  for (int t = 0; t < 20; ++t) {
    const DualQuaternion step = random_tangent(rng, 0.005, 0.05, 0.05);
    const auto seq = screw_sequence(step, 60, random_unit_dq(rng));
    for (const FilterConfig& cfg : all_configs()) {
      const auto out = filter_trajectory(std::span(seq), cfg);
      REQUIRE(out.size() == seq.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < seq.size(); ++i) worst = std::max(worst, geodesic_distance(out[i], seq[i]));
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("uniform rotation and straight line translation are preserved") {
  Rand rng(53);
  const Vec3 w = 0.03 * random_unit_vec3(rng);
  const Vec3 v = random_vec3(rng, 0.1);
  std::vector<UnitQuaternion> rot;
  std::vector<Vec3> pts;
  std::vector<RigidPose> split;
  for (int k = 0; k < 50; ++k) {
    rot.push_back(quat_exp(Quaternion::pure(k * w)));
    pts.push_back(k * v);
    split.push_back({rot.back(), pts.back()});
  }
  FilterConfig cfg;
  const auto fr = filter_trajectory(std::span(rot), cfg);
  const auto fp = filter_trajectory(std::span(pts), cfg);
  const auto fs = filter_trajectory(std::span(split), cfg);
  for (std::size_t i = 0; i < rot.size(); ++i) {
    CHECK(geodesic_distance(fr[i], rot[i]) < 1e-6);
    CHECK((fp[i] - pts[i]).norm() < 1e-9);
    CHECK(geodesic_distance(fs[i], split[i]) < 1e-6);
  }
}

TEST_CASE("filtered poses satisfy the unit constraints") {
  Rand rng(54);
  const auto seq = noisy_sequence(rng, 200);
  for (const FilterConfig& cfg : all_configs()) {
    for (const auto& q : filter_trajectory(std::span(seq), cfg)) {
      CHECK(rotation_norm_residual(q.dual_quaternion()) < 1e-9);
      CHECK(dual_orthogonality_residual(q.dual_quaternion()) < 1e-9);
      CHECK(q.coeffs().allFinite());
    }
  }
}

TEST_CASE("filtering reduces noise on a smooth trajectory") {
  Rand rng(55);
  const DualQuaternion step = random_tangent(rng, 0.01, 0.02, 0.02);
  const auto clean = screw_sequence(step, 200, UnitDualQuaternion{});
  std::vector<UnitDualQuaternion> noisy;
  for (const auto& q : clean) noisy.push_back(q * dq_exp(random_tangent(rng, 0.0, 0.02, 0.02)));
  const auto out = filter_trajectory(std::span(noisy), FilterConfig{});
  double before = 0.0, after = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    before += geodesic_distance(noisy[i], clean[i]);
    after += geodesic_distance(out[i], clean[i]);
  }
  CHECK(after < 0.75 * before);
}

TEST_CASE("serial and parallel filters agree bit for bit") {
  Rand rng(56);
  const auto seq = noisy_sequence(rng, 300);
  std::vector<UnitQuaternion> rot;
  std::vector<RigidPose> split;
  for (const auto& q : seq) {
    rot.push_back(q.rotation());
    split.push_back(to_pose(q));
  }
  for (const FilterConfig& cfg : all_configs()) {
    CHECK(filter_trajectory(std::span(seq), cfg) == serial::filter_trajectory(std::span(seq), cfg));
    CHECK(filter_trajectory(std::span(std::as_const(rot)), cfg) ==
          serial::filter_trajectory(std::span(std::as_const(rot)), cfg));
    CHECK(filter_trajectory(std::span(std::as_const(split)), cfg) ==
          serial::filter_trajectory(std::span(std::as_const(split)), cfg));
  }
}

TEST_CASE("filter rejects bad configuration") {
  Rand rng(57);
  const auto seq = noisy_sequence(rng, 10);
  FilterConfig cfg;
  cfg.window = 4;
  CHECK_THROWS_AS(filter_trajectory(std::span(seq), cfg), std::invalid_argument);
  CHECK_THROWS_AS(serial::filter_trajectory(std::span(seq), cfg), std::invalid_argument);
  cfg.window = 5;
  CHECK(filter_trajectory(std::span<const UnitDualQuaternion>(), cfg).empty());
}

TEST_CASE("window boundaries are finite for any window size") {
  Rand rng(58);
  const auto seq = noisy_sequence(rng, 6);
  for (int k : {3, 5, 7, 19, 101}) {
    FilterConfig cfg;
    cfg.window = k;
    const auto out = filter_trajectory(std::span(seq), cfg);
    REQUIRE(out.size() == seq.size());
    CHECK(out.front().coeffs().allFinite());
    CHECK(out.back().coeffs().allFinite());
  }
}

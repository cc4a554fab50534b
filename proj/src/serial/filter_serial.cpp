// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Plain loops over the shared window kernel. No OpenMP.

#include "../filter_kernel.hpp"

namespace dqfilter::serial {

namespace {

template <class Point>
std::vector<Point> filter_loop(std::span<const Point> poses, const FilterConfig& cfg) {
  cfg.validate();
  std::vector<Point> out;
  out.reserve(poses.size());
  for (std::size_t i = 0; i < poses.size(); ++i) out.push_back(detail::filter_point(poses, i, cfg));
  return out;
}

}  // namespace

std::vector<UnitDualQuaternion> filter_trajectory(std::span<const UnitDualQuaternion> poses, const FilterConfig& cfg) {
  return filter_loop(poses, cfg);
}

std::vector<UnitQuaternion> filter_trajectory(std::span<const UnitQuaternion> rotations, const FilterConfig& cfg) {
  return filter_loop(rotations, cfg);
}

std::vector<Vec3> filter_trajectory(std::span<const Vec3> points, const FilterConfig& cfg) {
  return filter_loop(points, cfg);
}

std::vector<RigidPose> filter_trajectory(std::span<const RigidPose> poses, const FilterConfig& cfg) {
  std::vector<RigidPose> out;
  out.reserve(poses.size());
  std::vector<UnitQuaternion> rotations;
  std::vector<Vec3> translations;
  for (const auto& p : poses) {
    rotations.push_back(p.rotation);
    translations.push_back(p.translation);
  }
  const auto r = filter_loop(std::span<const UnitQuaternion>(rotations), cfg);
  const auto t = filter_loop(std::span<const Vec3>(translations), cfg);
  for (std::size_t i = 0; i < poses.size(); ++i) out.push_back({r[i], t[i]});
  return out;
}

}  // namespace dqfilter::serial

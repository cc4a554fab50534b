// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "filter_kernel.hpp"

#include <exception>

namespace dqfilter {

namespace {

template <class Point>
std::vector<Point> filter_parallel(std::span<const Point> poses, const FilterConfig& cfg) {
  cfg.validate();
  std::vector<Point> out(poses.size());
  const auto n = static_cast<std::ptrdiff_t>(poses.size());
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = detail::filter_point(poses, static_cast<std::size_t>(i), cfg);
    } catch (...) {
#pragma omp critical(dqfilter_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

std::vector<UnitDualQuaternion> filter_trajectory(std::span<const UnitDualQuaternion> poses, const FilterConfig& cfg) {
  return filter_parallel(poses, cfg);
}

std::vector<UnitQuaternion> filter_trajectory(std::span<const UnitQuaternion> rotations, const FilterConfig& cfg) {
  return filter_parallel(rotations, cfg);
}

std::vector<Vec3> filter_trajectory(std::span<const Vec3> points, const FilterConfig& cfg) {
  return filter_parallel(points, cfg);
}

std::vector<RigidPose> filter_trajectory(std::span<const RigidPose> poses, const FilterConfig& cfg) {
  std::vector<UnitQuaternion> rotations;
  std::vector<Vec3> translations;
  rotations.reserve(poses.size());
  translations.reserve(poses.size());
  for (const auto& p : poses) {
    rotations.push_back(p.rotation);
    translations.push_back(p.translation);
  }
  const auto r = filter_parallel(std::span<const UnitQuaternion>(rotations), cfg);
  const auto t = filter_parallel(std::span<const Vec3>(translations), cfg);
  std::vector<RigidPose> out(poses.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {r[i], t[i]};
  return out;
}

}  // namespace dqfilter

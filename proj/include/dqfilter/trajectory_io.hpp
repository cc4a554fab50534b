// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Trajectory text files.
//
//   # dqfilter-trajectory v1 space=qt
//   # key=value                         (optional metadata lines)
//   0 t_x t_y t_z q_w q_x q_y q_z       (space qt)
//   0 q1 q2 q3 q4 q5 q6 q7 q8           (space dq, real part first)
//
// Fields are whitespace separated; numbers are written with 17 significant
// digits. Quaternions are scalar-first.

#pragma once

#include "dqfilter/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dqfilter {

enum class Space { dq, qt };

std::string_view to_string(Space s);
/// Throws std::invalid_argument for anything other than "dq" or "qt".
Space parse_space(std::string_view s);

struct TrajectoryFile {
  Space space{Space::qt};
  std::vector<std::pair<std::string, std::string>> metadata;
  PoseTrajectory poses;

  /// Value of a metadata key, or empty.
  std::string meta(std::string_view key) const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Records must carry unit quaternions (or unit dual quaternions) within
/// 1e-6; accepted values are projected onto the constraint set.
TrajectoryFile parse_trajectory(std::istream& in, const std::string& source = "<stream>");
TrajectoryFile read_trajectory(const std::filesystem::path& path);

std::string format_trajectory(const TrajectoryFile& file);
void write_trajectory(const std::filesystem::path& path, const TrajectoryFile& file);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace dqfilter

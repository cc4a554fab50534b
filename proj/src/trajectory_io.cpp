// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/trajectory_io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace dqfilter {

namespace {

constexpr std::string_view kMagic = "# dqfilter-trajectory v1 space=";

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

void append_number(std::string& out, double v) {
  std::array<char, 40> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
  out.append(buf.data(), static_cast<std::size_t>(n));
}

}  // namespace

std::string_view to_string(Space s) { return s == Space::dq ? "dq" : "qt"; }

Space parse_space(std::string_view s) {
  if (s == "dq") return Space::dq;
  if (s == "qt") return Space::qt;
  throw std::invalid_argument("unknown space '" + std::string(s) + "' (expected dq or qt)");
}

std::string TrajectoryFile::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

TrajectoryFile parse_trajectory(std::istream& in, const std::string& source) {
  TrajectoryFile file;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (!have_header) {
      if (!view.starts_with(kMagic)) throw ParseError(source, lineno, "missing '# dqfilter-trajectory v1' header");
      try {
        file.space = parse_space(view.substr(kMagic.size()));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, lineno, e.what());
      }
      have_header = true;
      continue;
    }
    if (view.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (view.front() == '#') {
      const std::size_t start = view.find_first_not_of("# ");
      if (start == std::string_view::npos) continue;
      const std::string_view body = view.substr(start);
      const std::size_t eq = body.find('=');
      if (eq != std::string_view::npos) file.metadata.emplace_back(body.substr(0, eq), body.substr(eq + 1));
      continue;
    }

    const auto fields = split_fields(view);
    const std::size_t expected = file.space == Space::dq ? 9 : 8;
    if (fields.size() != expected) {
      throw ParseError(source, lineno,
                       "expected " + std::to_string(expected) + " fields, found " + std::to_string(fields.size()));
    }
    long long index = 0;
    {
      const auto res = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), index);
      if (res.ec != std::errc{} || res.ptr != fields[0].data() + fields[0].size()) {
        throw ParseError(source, lineno, "record index is not an integer");
      }
    }
    std::array<double, 8> v{};
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (!parse_double(fields[k], v[k - 1])) {
        throw ParseError(source, lineno, "malformed number '" + std::string(fields[k]) + "'");
      }
    }

    if (file.space == Space::qt) {
      const Quaternion q{v[3], v[4], v[5], v[6]};
      if (!(std::abs(q.norm() - 1.0) <= kInputTolerance)) {
        throw ParseError(source, lineno, "rotation quaternion is not unit length");
      }
      file.poses.push_back({UnitQuaternion(q), Vec3{v[0], v[1], v[2]}});
    } else {
      const DualQuaternion q{{v[0], v[1], v[2], v[3]}, {v[4], v[5], v[6], v[7]}};
      try {
        file.poses.push_back(to_pose(UnitDualQuaternion::from_raw(q)));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, lineno, e.what());
      }
    }
  }
  if (!have_header) throw ParseError(source, lineno, "empty trajectory file");
  return file;
}

TrajectoryFile read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_trajectory(in, path.string());
}

std::string format_trajectory(const TrajectoryFile& file) {
  std::string out;
  out.reserve(64 + file.poses.size() * 180);
  out.append(kMagic);
  out.append(to_string(file.space));
  out.push_back('\n');
  for (const auto& [k, v] : file.metadata) {
    out.append("# ").append(k).append("=").append(v).push_back('\n');
  }
  for (std::size_t i = 0; i < file.poses.size(); ++i) {
    out.append(std::to_string(i));
    std::array<double, 8> v{};
    std::size_t count = 0;
    if (file.space == Space::qt) {
      const RigidPose& p = file.poses[i];
      v = {p.translation.x(), p.translation.y(), p.translation.z(), p.rotation.w(), p.rotation.x(), p.rotation.y(),
           p.rotation.z(), 0.0};
      count = 7;
    } else {
      const Vec8 c = from_pose(file.poses[i]).coeffs();
      for (int k = 0; k < 8; ++k) v[static_cast<std::size_t>(k)] = c[k];
      count = 8;
    }
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(' ');
      append_number(out, v[k]);
    }
    out.push_back('\n');
  }
  return out;
}

void write_trajectory(const std::filesystem::path& path, const TrajectoryFile& file) {
  write_file_atomic(path, format_trajectory(file));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write '" + path.string() + "'");
  }
}

}  // namespace dqfilter

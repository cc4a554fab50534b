// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// Pipelines behind the dqfilter command line tool.

#pragma once

#include "dqfilter/regression.hpp"
#include "dqfilter/trajectory.hpp"
#include "dqfilter/trajectory_io.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dqfilter::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kConfigError = 3,
  kIoError = 4,
  kDataError = 5,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  int samples{500};
  std::uint64_t seed{1};
  double sigma{0.02};
  double outlier_fraction{0.05};
  double outlier_sigma{0.2};
  Space space{Space::qt};
  std::filesystem::path ground_truth_path;
  std::filesystem::path noisy_path;
};

struct GeneratedPair {
  TrajectoryFile ground_truth;
  TrajectoryFile noisy;
  std::vector<std::size_t> outliers;
};

/// Noise stream seed derived from the trajectory seed.
std::uint64_t noise_seed(std::uint64_t seed);

/// Builds both trajectories in memory.
GeneratedPair generate_pair(const GenerateOptions& opt);
/// Builds and writes both trajectories.
GeneratedPair run_generate(const GenerateOptions& opt);

/// Methods selectable on the command line; kalman ignores the space.
enum class Method { pca, wpca, irls, kalman };
Method parse_method(std::string_view s);
std::string_view to_string(Method m);

struct FilterOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  Method method{Method::irls};
  std::optional<Space> space;  // filtering space; defaults to the input file's
  FilterConfig config;
};

/// Applies one method in one space.
PoseTrajectory apply_method(std::span<const RigidPose> poses, Method method, Space space, const FilterConfig& cfg);

TrajectoryFile run_filter(const FilterOptions& opt);

struct EvaluateOptions {
  std::filesystem::path estimate;
  std::filesystem::path ground_truth;
  std::filesystem::path report;  // JSON; the CSV series goes next to it
};

nlohmann::ordered_json report_json(const ErrorReport& rep);
std::string report_csv(const ErrorReport& rep);
/// `report` with its extension replaced by .csv.
std::filesystem::path csv_path_for(const std::filesystem::path& report);

ErrorReport run_evaluate(const EvaluateOptions& opt);

struct CompareOptions {
  GenerateOptions generate;  // used when no input files are given
  std::optional<std::filesystem::path> input;
  std::optional<std::filesystem::path> ground_truth;
  FilterConfig config;
  std::filesystem::path report;
};

struct CompareRow {
  std::string method;  // pca, wpca, irls, dual-pca, dual-wpca, dual-irls, kalman
  ErrorReport errors;
};

struct CompareResult {
  ErrorReport input;  // errors of the unfiltered noisy trajectory
  std::vector<CompareRow> rows;
};

/// Runs the seven methods on one noisy trajectory.
CompareResult compare_methods(std::span<const RigidPose> noisy, std::span<const RigidPose> ground_truth,
                              const FilterConfig& cfg);
CompareResult run_compare(const CompareOptions& opt);
std::string compare_table(const CompareResult& res);

}  // namespace dqfilter::cli

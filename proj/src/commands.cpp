// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0

#include "dqfilter/commands.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace dqfilter::cli {

using nlohmann::ordered_json;

namespace {

// Shortest text that reads back to the same double.
std::string format_double(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

void validate(const FilterConfig& cfg) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void validate(const GenerateOptions& opt) {
  if (opt.samples < 2) throw ConfigError("--samples must be at least 2");
  if (!(opt.sigma >= 0.0) || !(opt.outlier_sigma >= 0.0)) throw ConfigError("noise sigmas must be nonnegative");
  if (!(opt.outlier_fraction >= 0.0 && opt.outlier_fraction <= 1.0)) {
    throw ConfigError("--outlier-frac must lie in [0, 1]");
  }
}

ordered_json config_json(const FilterConfig& cfg) {
  return {{"window", cfg.window},
          {"irls_iters", cfg.irls_iterations},
          {"delta", cfg.delta},
          {"prior", std::string(to_string(cfg.prior))},
          {"bandwidth", cfg.effective_bandwidth()}};
}

ordered_json generate_json(const GenerateOptions& opt) {
  return {{"samples", opt.samples},
          {"seed", opt.seed},
          {"noise_seed", noise_seed(opt.seed)},
          {"rng", std::string(Rng::kAlgorithm)},
          {"sigma", opt.sigma},
          {"outlier_frac", opt.outlier_fraction},
          {"outlier_sigma", opt.outlier_sigma}};
}

ordered_json summary_json(const ChannelSummary& s) {
  return {{"median", s.median}, {"mean", s.mean}, {"std", s.stddev}, {"q1", s.q1},
          {"q3", s.q3},         {"min", s.min},   {"max", s.max}};
}

}  // namespace

std::uint64_t noise_seed(std::uint64_t seed) { return seed + 1; }

GeneratedPair generate_pair(const GenerateOptions& opt) {
  validate(opt);
  const SplineSpec spec = SplineSpec::random(opt.seed, opt.samples);
  const PoseTrajectory truth = generate_spline_trajectory(spec);
  NoiseSpec noise;
  noise.sigma = opt.sigma;
  noise.outlier_fraction = opt.outlier_fraction;
  noise.outlier_sigma = opt.outlier_sigma;
  noise.seed = noise_seed(opt.seed);
  NoisyTrajectory noisy = add_noise(truth, noise);

  GeneratedPair out;
  out.outliers = noisy.outliers;
  std::vector<std::pair<std::string, std::string>> meta{
      {"kind", "ground_truth"},
      {"samples", std::to_string(opt.samples)},
      {"seed", std::to_string(opt.seed)},
      {"rng", std::string(Rng::kAlgorithm)},
  };
  out.ground_truth = {opt.space, meta, truth};

  meta[0].second = "noisy";
  meta.emplace_back("noise_seed", std::to_string(noise.seed));
  meta.emplace_back("sigma", format_double(opt.sigma));
  meta.emplace_back("outlier_frac", format_double(opt.outlier_fraction));
  meta.emplace_back("outlier_sigma", format_double(opt.outlier_sigma));
  std::string list;
  for (std::size_t i : noisy.outliers) {
    if (!list.empty()) list.push_back(' ');
    list += std::to_string(i);
  }
  meta.emplace_back("outlier_count", std::to_string(noisy.outliers.size()));
  meta.emplace_back("outliers", list);
  out.noisy = {opt.space, std::move(meta), std::move(noisy.poses)};
  return out;
}

GeneratedPair run_generate(const GenerateOptions& opt) {
  GeneratedPair pair = generate_pair(opt);
  if (opt.ground_truth_path.empty() || opt.noisy_path.empty()) {
    throw ConfigError("generate needs both --gt and --out paths");
  }
  write_trajectory(opt.ground_truth_path, pair.ground_truth);
  write_trajectory(opt.noisy_path, pair.noisy);
  return pair;
}

Method parse_method(std::string_view s) {
  if (s == "pca") return Method::pca;
  if (s == "wpca") return Method::wpca;
  if (s == "irls") return Method::irls;
  if (s == "kalman") return Method::kalman;
  throw ConfigError("unknown method '" + std::string(s) + "' (expected pca, wpca, irls or kalman)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::pca: return "pca";
    case Method::wpca: return "wpca";
    case Method::irls: return "irls";
    case Method::kalman: return "kalman";
  }
  return "?";
}

PoseTrajectory apply_method(std::span<const RigidPose> poses, Method method, Space space, const FilterConfig& cfg) {
  if (method == Method::kalman) return kalman_baseline(poses);
  FilterConfig c = cfg;
  c.method = parse_filter_method(to_string(method));
  validate(c);
  if (space == Space::dq) {
    const auto dual = to_dual(poses);
    return from_dual(filter_trajectory(std::span<const UnitDualQuaternion>(dual), c));
  }
  return filter_trajectory(poses, c);
}

TrajectoryFile run_filter(const FilterOptions& opt) {
  validate(opt.config);
  if (opt.output.empty()) throw ConfigError("filter needs an --out path");
  const TrajectoryFile in = read_trajectory(opt.input);
  const Space space = opt.space.value_or(in.space);

  TrajectoryFile out;
  out.space = in.space;
  out.metadata = {{"kind", "filtered"},
                  {"source", opt.input.string()},
                  {"method", std::string(to_string(opt.method))},
                  {"filter_space", std::string(to_string(space))}};
  if (opt.method != Method::kalman) {
    out.metadata.emplace_back("window", std::to_string(opt.config.window));
    out.metadata.emplace_back("irls_iters", std::to_string(opt.config.irls_iterations));
    out.metadata.emplace_back("delta", format_double(opt.config.delta));
    out.metadata.emplace_back("prior", std::string(to_string(opt.config.prior)));
    out.metadata.emplace_back("bandwidth", format_double(opt.config.effective_bandwidth()));
  }
  out.poses = apply_method(in.poses, opt.method, space, opt.config);
  write_trajectory(opt.output, out);
  return out;
}

ordered_json report_json(const ErrorReport& rep) {
  ordered_json j;
  j["count"] = rep.trans.size();
  j["summary"] = {{"angle_deg", summary_json(rep.angle)},
                  {"axis_deg", summary_json(rep.axis)},
                  {"trans", summary_json(rep.translation)}};
  j["series"] = {{"angle_deg", rep.angle_deg}, {"axis_deg", rep.axis_deg}, {"trans", rep.trans}};
  return j;
}

std::string report_csv(const ErrorReport& rep) {
  std::string out = "index,angle_deg,axis_deg,trans\n";
  for (std::size_t i = 0; i < rep.trans.size(); ++i) {
    out += std::to_string(i) + "," + format_double(rep.angle_deg[i]) + "," + format_double(rep.axis_deg[i]) + "," +
           format_double(rep.trans[i]) + "\n";
  }
  return out;
}

std::filesystem::path csv_path_for(const std::filesystem::path& report) {
  std::filesystem::path p = report;
  p.replace_extension(".csv");
  return p;
}

ErrorReport run_evaluate(const EvaluateOptions& opt) {
  const TrajectoryFile est = read_trajectory(opt.estimate);
  const TrajectoryFile gt = read_trajectory(opt.ground_truth);
  ErrorReport rep = evaluate(est.poses, gt.poses);
  if (!opt.report.empty()) {
    ordered_json j;
    j["tool"] = "dqfilter";
    j["command"] = "evaluate";
    j["config"] = {{"estimate", opt.estimate.string()}, {"ground_truth", opt.ground_truth.string()}};
    j.update(report_json(rep));
    write_file_atomic(opt.report, j.dump(2) + "\n");
    write_file_atomic(csv_path_for(opt.report), report_csv(rep));
  }
  return rep;
}

CompareResult compare_methods(std::span<const RigidPose> noisy, std::span<const RigidPose> ground_truth,
                              const FilterConfig& cfg) {
  validate(cfg);
  struct Run {
    const char* name;
    Method method;
    Space space;
  };
  static constexpr std::array<Run, 7> kRuns{{
      {"pca", Method::pca, Space::qt},
      {"wpca", Method::wpca, Space::qt},
      {"irls", Method::irls, Space::qt},
      {"dual-pca", Method::pca, Space::dq},
      {"dual-wpca", Method::wpca, Space::dq},
      {"dual-irls", Method::irls, Space::dq},
      {"kalman", Method::kalman, Space::qt},
  }};
  CompareResult res;
  res.input = evaluate(noisy, ground_truth);
  for (const Run& run : kRuns) {
    res.rows.push_back({run.name, evaluate(apply_method(noisy, run.method, run.space, cfg), ground_truth)});
  }
  return res;
}

CompareResult run_compare(const CompareOptions& opt) {
  validate(opt.config);
  if (opt.input.has_value() != opt.ground_truth.has_value()) {
    throw ConfigError("compare needs both --in and --gt, or neither");
  }
  PoseTrajectory noisy;
  PoseTrajectory truth;
  ordered_json source;
  if (opt.input) {
    noisy = read_trajectory(*opt.input).poses;
    truth = read_trajectory(*opt.ground_truth).poses;
    source = {{"input", opt.input->string()}, {"ground_truth", opt.ground_truth->string()}};
  } else {
    GeneratedPair pair = generate_pair(opt.generate);
    noisy = std::move(pair.noisy.poses);
    truth = std::move(pair.ground_truth.poses);
    source = generate_json(opt.generate);
  }
  CompareResult res = compare_methods(noisy, truth, opt.config);

  if (!opt.report.empty()) {
    ordered_json j;
    j["tool"] = "dqfilter";
    j["command"] = "compare";
    j["config"] = config_json(opt.config);
    j["source"] = source;
    j["kalman"] = {{"rotation", {kKalmanRotation.process, kKalmanRotation.measurement}},
                   {"translation", {kKalmanTranslation.process, kKalmanTranslation.measurement}},
                   {"note", "approximate reproduction: random-walk state per component"}};
    j["input"] = {{"angle_deg", summary_json(res.input.angle)},
                  {"axis_deg", summary_json(res.input.axis)},
                  {"trans", summary_json(res.input.translation)}};
    ordered_json rows = ordered_json::array();
    std::string csv = "method,angle_deg_median,angle_deg_mean,angle_deg_std,axis_deg_median,axis_deg_mean,"
                      "axis_deg_std,trans_median,trans_mean,trans_std\n";
    for (const auto& row : res.rows) {
      rows.push_back({{"method", row.method},
                      {"angle_deg", summary_json(row.errors.angle)},
                      {"axis_deg", summary_json(row.errors.axis)},
                      {"trans", summary_json(row.errors.translation)}});
      csv += row.method;
      for (const ChannelSummary* s : {&row.errors.angle, &row.errors.axis, &row.errors.translation}) {
        csv += "," + format_double(s->median) + "," + format_double(s->mean) + "," + format_double(s->stddev);
      }
      csv += "\n";
    }
    j["methods"] = rows;
    write_file_atomic(opt.report, j.dump(2) + "\n");
    write_file_atomic(csv_path_for(opt.report), csv);
  }
  return res;
}

std::string compare_table(const CompareResult& res) {
  std::ostringstream os;
  std::array<char, 160> line{};
  std::snprintf(line.data(), line.size(), "%-10s %12s %12s %12s %12s %12s %12s\n", "method", "angle_med",
                "angle_mean", "axis_med", "axis_mean", "trans_med", "trans_mean");
  os << line.data();
  const auto emit = [&](const std::string& name, const ErrorReport& e) {
    std::snprintf(line.data(), line.size(), "%-10s %12.5f %12.5f %12.5f %12.5f %12.6f %12.6f\n", name.c_str(),
                  e.angle.median, e.angle.mean, e.axis.median, e.axis.mean, e.translation.median,
                  e.translation.mean);
    os << line.data();
  };
  emit("input", res.input);
  for (const auto& row : res.rows) emit(row.method, row.errors);
  return os.str();
}

}  // namespace dqfilter::cli

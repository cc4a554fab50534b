// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// dqfilter: generate, filter, evaluate and compare pose trajectories.

#include "dqfilter/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace dqfilter;
using namespace dqfilter::cli;

namespace {

struct FilterFlags {
  int window{19};
  int irls_iters{kDefaultIrlsIterations};
  double delta{kDefaultIrlsDelta};
  std::string prior{"index"};
  std::optional<double> bandwidth;

  void add_to(CLI::App* app) {
    app->add_option("--window", window, "Local regression window (odd, >= 3)")->capture_default_str();
    app->add_option("--irls-iters", irls_iters, "IRLS iterations")->capture_default_str();
    app->add_option("--delta", delta, "IRLS residual clamp")->capture_default_str();
    app->add_option("--prior", prior, "Gaussian prior distance: index or tangent")->capture_default_str();
    app->add_option("--bandwidth", bandwidth, "Gaussian prior bandwidth (default (window-1)/4 or 0.1)");
  }

  FilterConfig config() const {
    FilterConfig cfg;
    cfg.window = window;
    cfg.irls_iterations = irls_iters;
    cfg.delta = delta;
    try {
      cfg.prior = parse_prior_mode(prior);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    cfg.bandwidth = bandwidth;
    return cfg;
  }
};

void add_noise_flags(CLI::App* app, GenerateOptions& g, std::string& space) {
  app->add_option("--samples", g.samples, "Number of samples")->capture_default_str();
  app->add_option("--seed", g.seed, "Random seed")->envname("DQFILTER_SEED")->capture_default_str();
  app->add_option("--sigma", g.sigma, "Uniform noise half-width")->capture_default_str();
  app->add_option("--outlier-frac", g.outlier_fraction, "Fraction of outlier samples")->capture_default_str();
  app->add_option("--outlier-sigma", g.outlier_sigma, "Outlier noise half-width")->capture_default_str();
  app->add_option("--space", space, "File record format: dq or qt")->capture_default_str();
}

Space space_flag(const std::string& s) {
  try {
    return parse_space(s);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pose trajectory filtering on unit dual quaternions"};
  app.set_config("--config", "", "Configuration file (flags override it)");
  app.require_subcommand(1);

  // generate
  GenerateOptions gen;
  std::string gen_space = "qt";
  auto* generate = app.add_subcommand("generate", "Write a synthetic ground-truth / noisy trajectory pair");
  add_noise_flags(generate, gen, gen_space);
  generate->add_option("--gt", gen.ground_truth_path, "Ground-truth output path")->required();
  generate->add_option("--out", gen.noisy_path, "Noisy output path")->required();

  // filter
  FilterOptions flt;
  FilterFlags flt_flags;
  std::string flt_method = "irls";
  std::string flt_space;
  auto* filter = app.add_subcommand("filter", "Filter a trajectory file");
  filter->add_option("--in", flt.input, "Input trajectory")->required();
  filter->add_option("--out", flt.output, "Output trajectory")->required();
  filter->add_option("--method", flt_method, "pca, wpca, irls or kalman")->capture_default_str();
  filter->add_option("--space", flt_space, "Filtering space: dq or qt (default: the input's)");
  flt_flags.add_to(filter);

  // evaluate
  EvaluateOptions ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Compare an estimate against ground truth");
  evaluate_cmd->add_option("--in", ev.estimate, "Estimated trajectory")->required();
  evaluate_cmd->add_option("--gt", ev.ground_truth, "Ground-truth trajectory")->required();
  evaluate_cmd->add_option("--report", ev.report, "JSON report path (CSV series written alongside)");

  // compare
  CompareOptions cmp;
  FilterFlags cmp_flags;
  std::string cmp_space = "qt";
  std::string cmp_in, cmp_gt;
  auto* compare = app.add_subcommand("compare", "Run all seven methods on one noisy trajectory");
  add_noise_flags(compare, cmp.generate, cmp_space);
  compare->add_option("--in", cmp_in, "Noisy trajectory (otherwise generated)");
  compare->add_option("--gt", cmp_gt, "Ground truth for --in");
  compare->add_option("--report", cmp.report, "JSON report path (CSV table written alongside)");
  cmp_flags.add_to(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (generate->parsed()) {
      gen.space = space_flag(gen_space);
      const GeneratedPair pair = run_generate(gen);
      std::cout << "wrote " << pair.ground_truth.poses.size() << " poses (" << pair.outliers.size()
                << " outliers) to " << gen.ground_truth_path.string() << " and " << gen.noisy_path.string() << "\n";
    } else if (filter->parsed()) {
      flt.method = parse_method(flt_method);
      if (!flt_space.empty()) flt.space = space_flag(flt_space);
      flt.config = flt_flags.config();
      const TrajectoryFile out = run_filter(flt);
      std::cout << "filtered " << out.poses.size() << " poses into " << flt.output.string() << "\n";
    } else if (evaluate_cmd->parsed()) {
      const ErrorReport rep = run_evaluate(ev);
      std::cout << "median angle " << rep.angle.median << " deg, axis " << rep.axis.median << " deg, translation "
                << rep.translation.median << "\n";
    } else if (compare->parsed()) {
      cmp.generate.space = space_flag(cmp_space);
      if (!cmp_in.empty()) cmp.input = cmp_in;
      if (!cmp_gt.empty()) cmp.ground_truth = cmp_gt;
      cmp.config = cmp_flags.config();
      std::cout << compare_table(run_compare(cmp));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

// Copyright 2026 The dqfilter Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end runs of the dqfilter binary.

#include "dqfilter/commands.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace dqfilter;
namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "dqfilter_test_cli";

int run(const std::string& args) {
  const std::string cmd = std::string(DQFILTER_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string path(const std::string& name) { return (kWork / name).string(); }

struct Workspace {
  Workspace() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
  ~Workspace() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE("generate is reproducible and lists outliers") {
  Workspace ws;
  REQUIRE(run("generate --seed 5 --gt " + path("gt1") + " --out " + path("n1")) == 0);
  REQUIRE(run("generate --seed 5 --gt " + path("gt2") + " --out " + path("n2")) == 0);
  CHECK(slurp(path("gt1")) == slurp(path("gt2")));
  CHECK(slurp(path("n1")) == slurp(path("n2")));

  const TrajectoryFile noisy = read_trajectory(path("n1"));
  CHECK(noisy.poses.size() == 500);
  CHECK(noisy.meta("seed") == "5");
  CHECK(noisy.meta("outlier_count") == "25");
  std::istringstream ids(noisy.meta("outliers"));
  int count = 0;
  for (std::string tok; ids >> tok;) ++count;
  CHECK(count == 25);

  REQUIRE(run("generate --seed 6 --gt " + path("gt3") + " --out " + path("n3")) == 0);
  CHECK(slurp(path("gt3")) != slurp(path("gt1")));
}

TEST_CASE("seed falls back to the environment") {
  Workspace ws;
  REQUIRE(run("generate --seed 9 --samples 40 --gt " + path("a") + " --out " + path("an")) == 0);
  REQUIRE(run("generate --samples 40 --gt " + path("b") + " --out " + path("bn")) == 0);
  const std::string env = "DQFILTER_SEED=9 ";
  const std::string cmd = env + DQFILTER_BINARY + " generate --samples 40 --gt " + path("c") + " --out " +
                          path("cn") + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(path("a")) == slurp(path("c")));
  CHECK(slurp(path("a")) != slurp(path("b")));
}

TEST_CASE("zero noise produces identical poses") {
  Workspace ws;
  REQUIRE(run("generate --sigma 0 --outlier-frac 0 --samples 50 --gt " + path("gt") + " --out " + path("n")) == 0);
  CHECK(read_trajectory(path("gt")).poses == read_trajectory(path("n")).poses);
}

TEST_CASE("pipeline is byte reproducible and reduces error") {
  Workspace ws;
  for (const char* run_id : {"1", "2"}) {
    const std::string r = run_id;
    REQUIRE(run("generate --seed 3 --space dq --gt " + path("gt") + " --out " + path("n")) == 0);
    REQUIRE(run("filter --method irls --window 19 --in " + path("n") + " --out " + path("f")) == 0);
    REQUIRE(run("evaluate --in " + path("f") + " --gt " + path("gt") + " --report " + path("rep.json")) == 0);
    for (const char* name : {"gt", "n", "f", "rep.json", "rep.csv"}) {
      fs::copy_file(path(name), path(std::string(name) + "." + r));
    }
  }
  for (const char* name : {"gt", "n", "f", "rep.json", "rep.csv"}) {
    CHECK(slurp(path(std::string(name) + ".1")) == slurp(path(std::string(name) + ".2")));
  }
  fs::rename(path("gt"), path("gt1"));
  fs::rename(path("n"), path("n1"));
  fs::rename(path("f"), path("f1"));
  fs::rename(path("rep.json"), path("rep1.json"));

  const auto rep = nlohmann::json::parse(slurp(path("rep1.json")));
  CHECK(rep["series"]["angle_deg"].size() == 500);
  CHECK(rep["series"]["axis_deg"].size() == 500);
  CHECK(rep["series"]["trans"].size() == 500);
  CHECK(read_trajectory(path("f1")).space == Space::dq);

  REQUIRE(run("evaluate --in " + path("n1") + " --gt " + path("gt1") + " --report " + path("raw.json")) == 0);
  const auto raw = nlohmann::json::parse(slurp(path("raw.json")));
  CHECK(rep["summary"]["trans"]["median"].get<double>() < raw["summary"]["trans"]["median"].get<double>());

  // Report medians equal the library evaluation.
  const ErrorReport lib =
      evaluate(read_trajectory(path("f1")).poses, read_trajectory(path("gt1")).poses);
  CHECK(rep["summary"]["trans"]["median"].get<double>() == lib.translation.median);
  CHECK(rep["summary"]["axis_deg"]["median"].get<double>() == lib.axis.median);
}

TEST_CASE("evaluate of ground truth against itself is zero") {
  Workspace ws;
  REQUIRE(run("generate --samples 30 --gt " + path("gt") + " --out " + path("n")) == 0);
  REQUIRE(run("evaluate --in " + path("gt") + " --gt " + path("gt") + " --report " + path("r.json")) == 0);
  const auto rep = nlohmann::json::parse(slurp(path("r.json")));
  for (const char* ch : {"angle_deg", "axis_deg", "trans"}) CHECK(rep["summary"][ch]["median"].get<double>() == 0.0);
}

TEST_CASE("filter edge cases") {
  Workspace ws;
  TrajectoryFile constant;
  constant.space = Space::qt;
  constant.poses.assign(12, RigidPose{from_axis_angle({Vec3(0, 0, 1), 0.7}), Vec3(1, 2, 3)});
  write_trajectory(path("c"), constant);
  for (const char* m : {"pca", "wpca", "irls"}) {
    REQUIRE(run(std::string("filter --method ") + m + " --in " + path("c") + " --out " + path("cf")) == 0);
    CHECK(read_trajectory(path("cf")).poses == read_trajectory(path("c")).poses);
    REQUIRE(run(std::string("filter --space dq --method ") + m + " --in " + path("c") + " --out " + path("cf")) ==
            0);
    CHECK(read_trajectory(path("cf")).space == Space::qt);
  }
  // Window longer than the sequence is clipped.
  CHECK(run("filter --window 51 --in " + path("c") + " --out " + path("cf")) == 0);
  CHECK(run("filter --method kalman --in " + path("c") + " --out " + path("ck")) == 0);
}

TEST_CASE("compare emits seven rows") {
  Workspace ws;
  REQUIRE(run("compare --seed 2 --report " + path("cmp.json")) == 0);
  const auto rep = nlohmann::json::parse(slurp(path("cmp.json")));
  REQUIRE(rep["methods"].size() == 7);
  double dual_irls = 0, dual_pca = 0;
  for (const auto& row : rep["methods"]) {
    for (const char* ch : {"angle_deg", "axis_deg", "trans"}) {
      CHECK(row[ch].contains("median"));
      CHECK(row[ch].contains("std"));
    }
    if (row["method"] == "dual-irls") dual_irls = row["trans"]["median"].get<double>();
    if (row["method"] == "dual-pca") dual_pca = row["trans"]["median"].get<double>();
  }
  CHECK(dual_irls <= dual_pca);
  CHECK(fs::exists(path("cmp.csv")));
}

TEST_CASE("exit codes") {
  Workspace ws;
  REQUIRE(run("generate --samples 30 --gt " + path("gt") + " --out " + path("n")) == 0);
  CHECK(run("") == cli::kConfigError);
  CHECK(run("--help") == cli::kOk);
  CHECK(run("filter --window 18 --in " + path("n") + " --out " + path("f")) == cli::kConfigError);
  CHECK(run("filter --method svd --in " + path("n") + " --out " + path("f")) == cli::kConfigError);
  CHECK(run("filter --prior time --in " + path("n") + " --out " + path("f")) == cli::kConfigError);
  CHECK(run("filter --in " + path("missing") + " --out " + path("f")) == cli::kIoError);
  CHECK(run("generate --gt " + path("no/dir/gt") + " --out " + path("x")) == cli::kIoError);

  {
    std::ofstream bad(path("bad"));
    bad << "# dqfilter-trajectory v1 space=qt\n0 0 0 0 1 0 0 0\n1 0 0\n";
  }
  CHECK(run("filter --in " + path("bad") + " --out " + path("f")) == cli::kParseError);

  REQUIRE(run("generate --samples 20 --gt " + path("gt20") + " --out " + path("n20")) == 0);
  CHECK(run("evaluate --in " + path("n20") + " --gt " + path("gt") + " --report " + path("r.json")) ==
        cli::kDataError);
}

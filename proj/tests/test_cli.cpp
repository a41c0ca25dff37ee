// SPDX-License-Identifier: Apache-2.0
//
// risopt: RIS phase configuration and transmit time-switching power allocation
// Copyright (C) 2026 The risopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "risopt/config.hpp"
#include "risopt/errors.hpp"
#include "risopt/experiment.hpp"

using namespace risopt;
namespace fs = std::filesystem;

namespace {

const char* kSmall =
    "# small sweep\n"
    "M = 4\n"
    "N = 8\n"
    "K = 3\n"
    "K_E = 0\n"
    "sweep = M\n"
    "sweep_values = 4\n"
    "algorithms = alg2a\n"
    "trials = 1\n";

ExperimentSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.cfg");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

std::string without_column(const std::string& csv, std::size_t column) {
  std::string out;
  for (const auto& l : lines_of(csv)) {
    auto f = split(l);
    if (column < f.size()) f.erase(f.begin() + static_cast<std::ptrdiff_t>(column));
    for (const auto& x : f) out += x + ",";
    out += "\n";
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("risopt_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentSpec s = parse(kSmall);
  CHECK(s.scenario.M == 4);
  CHECK(s.scenario.K_E == 0);
  CHECK(s.sweep_values == std::vector<double>{4.0});
  REQUIRE(s.algorithms.size() == 1);
  CHECK(s.algorithms[0].label() == "alg2a:prc-only");

  const ExperimentSpec t = parse(std::string(kSmall) +
                                 "P_dBm = 35  # trailing comment\nseed = 9\nprc_tol = 1e-4\n");
  CHECK(t.scenario.P_dBm == 35.0);
  CHECK(t.scenario.seed == 9);
  CHECK(t.prc_tol == 1e-4);
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_of(std::string(kSmall) + "bogus = 1\n").rfind("test.cfg:10: unknown key 'bogus'", 0) == 0);
  CHECK(error_of(std::string(kSmall) + "M = 5\n").rfind("test.cfg:10: duplicate key 'M'", 0) == 0);
  CHECK(error_of("M = \n").rfind("test.cfg:1: empty value", 0) == 0);
  CHECK(error_of("M 4\n").rfind("test.cfg:1: expected key = value", 0) == 0);
  CHECK(error_of("# c\nN = eight\n").rfind("test.cfg:2: expected an integer", 0) == 0);
  CHECK(error_of("P_dBm = 2x\n").rfind("test.cfg:1: expected a number", 0) == 0);
  CHECK(error_of("algorithms = alg9\n").rfind("test.cfg:1: unknown algorithm", 0) == 0);
  CHECK(error_of("algorithms = alg3:wrong\n").rfind("test.cfg:1: unknown delivery mode", 0) == 0);
  // Whole-spec checks run after the last line.
  CHECK(error_of("sweep_values = 12, 12\nalgorithms = alg2a\n").find("strictly increasing") != std::string::npos);
  CHECK(error_of("sweep = Q\nsweep_values = 1\nalgorithms = alg2a\n").find("sweep must be") != std::string::npos);
  CHECK(error_of("sweep_values = 1\nalgorithms = alg2a\ntrials = 0\n").find("trials") != std::string::npos);
  CHECK(error_of("sweep_values = 12.5\nalgorithms = alg2a\n").find("integer") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/risopt.cfg"), ConfigError);
}

TEST_CASE("algorithm labels") {
  for (const char* text : {"alg1-plain", "alg1-bb", "alg1-pbb", "alg2a", "alg2b", "alg3", "alg4", "alg5",
                           "random-theta"})
    CHECK(AlgorithmSpec::parse(text).label() == std::string(text) + ":prc-only");
  for (const char* text : {"alg2a:zf-swipt", "alg3:rzf-swipt", "alg3:igs-swipt", "alg5:info-only"})
    CHECK(AlgorithmSpec::parse(text).label() == text);
}

TEST_CASE("sweep axes") {
  Scenario base;
  CHECK(apply_sweep(base, "M", 12).M == 12);
  CHECK(apply_sweep(base, "N", 64).N == 64);
  CHECK(apply_sweep(base, "K", 7).K == 7);
  CHECK(apply_sweep(base, "P_dBm", 27.5).P_dBm == 27.5);
  CHECK_THROWS_AS(apply_sweep(base, "Q", 1), ConfigError);
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(1, 12, 0) == trial_seed(1, 12, 0));
  CHECK(trial_seed(1, 12, 0) != trial_seed(1, 12, 1));
  CHECK(trial_seed(1, 12, 0) != trial_seed(1, 14, 0));
  CHECK(trial_seed(1, 12, 0) != trial_seed(2, 12, 0));
}

TEST_CASE("one trial gives one data row and one aggregate row") {
  const ExperimentSpec s = parse(kSmall);
  const auto results = run_experiment(s, 1);
  REQUIRE(results.size() == 1);
  CHECK(results[0].ok());
  std::ostringstream data, agg;
  write_data_csv(data, results);
  write_aggregate_csv(agg, aggregate(results));
  CHECK(lines_of(data.str()).size() == 2);
  CHECK(lines_of(agg.str()).size() == 2);
  CHECK(split(lines_of(data.str())[0]).front() == "sweep_name");
}

TEST_CASE("reruns are identical apart from wall time") {
  ExperimentSpec s = parse(kSmall);
  s.sweep_values = {4, 5};
  s.trials = 3;
  s.algorithms = {AlgorithmSpec::parse("alg1-pbb"), AlgorithmSpec::parse("random-theta"),
                  AlgorithmSpec::parse("alg2a:zf-swipt")};
  std::ostringstream a, b, c;
  write_data_csv(a, run_experiment(s, 1));
  write_data_csv(b, run_experiment(s, 1));
  write_data_csv(c, run_experiment(s, 3));
  const auto header = split(lines_of(a.str())[0]);
  const auto wall = static_cast<std::size_t>(std::find(header.begin(), header.end(), "wall_ms") - header.begin());
  REQUIRE(wall < header.size());
  CHECK(without_column(a.str(), wall) == without_column(b.str(), wall));
  CHECK(without_column(a.str(), wall) == without_column(c.str(), wall));
  CHECK(lines_of(a.str()).size() == 1 + 2 * 3 * 3);
}

TEST_CASE("aggregates and unit conversion") {
  ExperimentSpec s = parse(kSmall);
  s.trials = 5;
  s.algorithms = {AlgorithmSpec::parse("alg2a"), AlgorithmSpec::parse("alg3:info-only")};
  const auto results = run_experiment(s, 2);
  for (const auto& r : results) {
    REQUIRE(r.ok());
    CHECK(std::abs(r.min_throughput_bpshz() - r.min_throughput_nats * std::numbers::log2e) <= 1e-12);
  }
  const auto rows = aggregate(results);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : results)
      if (r.algorithm == row.algorithm) {
        sum += r.min_throughput_bpshz();
        ++n;
      }
    CHECK(row.trials == 5);
    CHECK(row.succeeded == 5);
    CHECK(std::abs(row.mean_bpshz - sum / n) <= 1e-12);
    CHECK(std::abs(row.mean_bpshz - row.mean_nats * std::numbers::log2e) <= 1e-12);
  }
}

TEST_CASE("failed trials are recorded, not thrown") {
  Scenario sc = parse(kSmall).scenario;
  sc.K_E = 2;
  sc.e_min_dBm = 60.0;
  const TrialResult r = run_trial(sc, AlgorithmSpec::parse("alg2a:zf-swipt"), 3);
  CHECK_FALSE(r.ok());
  CHECK(r.status.rfind("error", 0) == 0);
  CHECK(std::isnan(r.min_throughput_nats));
  const auto rows = aggregate({r});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].succeeded == 0);
}

TEST_CASE("convergence traces") {
  std::ostringstream empty;
  write_trace_csv(empty, {});
  CHECK(empty.str() == "iteration,objective,gamma\n");

  Scenario sc = parse(kSmall).scenario;
  const TrialResult prc = run_trial(sc, AlgorithmSpec::parse("alg2a"), 4);
  REQUIRE(prc.ok());
  std::vector<double> f;
  for (const auto& row : prc.trace) {
    CHECK_FALSE(row.gamma.has_value());
    if (row.objective) f.push_back(*row.objective);
  }
  REQUIRE(f.size() >= 2);
  for (std::size_t i = 1; i < f.size(); ++i) CHECK(f[i] <= f[i - 1] * (1.0 + 1e-12));

  const TrialResult pf = run_trial(sc, AlgorithmSpec::parse("alg3:rzf-swipt"), 4);
  REQUIRE(pf.ok());
  std::vector<double> g;
  for (const auto& row : pf.trace)
    if (row.gamma) g.push_back(*row.gamma);
  REQUIRE(!g.empty());
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] >= g[i - 1] - 1e-9);
}

TEST_CASE("output directory layout") {
  const fs::path dir = scratch("layout");
  ExperimentSpec s = parse(kSmall);
  s.trials = 2;
  const auto results = run_experiment(s, 1);
  write_outputs(dir.string(), results);
  CHECK(fs::exists(dir / "data.csv"));
  CHECK(fs::exists(dir / "aggregate.csv"));
  for (const auto& r : results) {
    const fs::path t = dir / "traces" / (r.run_id() + ".csv");
    REQUIRE(fs::exists(t));
    CHECK(lines_of(slurp(t)).size() == 1 + r.trace.size());
  }
  CHECK(results[1].run_id() == "M=4_alg2a_prc-only_t1");
  fs::remove_all(dir);
}

#ifdef RISOPT_CLI_PATH
TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch("exit");
  const std::string cli = RISOPT_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int rc = std::system((cli + " " + args + " >" + (dir / "log.txt").string() + " 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  std::ofstream(dir / "good.cfg") << kSmall;
  std::ofstream(dir / "bad.cfg") << kSmall << "bogus = 1\n";
  {
    // Energy users out of reach: every trial fails.
    std::string text = std::string(kSmall);
    text.replace(text.find("K_E = 0"), 7, "K_E = 2");
    text.replace(text.find("algorithms = alg2a"), 18, "algorithms = alg2a:zf-swipt");
    std::ofstream(dir / "fail.cfg") << text << "e_min_dBm = 60\n";
  }
  const std::string out = (dir / "out").string();
  CHECK(run("run " + (dir / "good.cfg").string() + " --out " + out) == 0);
  CHECK(fs::exists(dir / "out" / "data.csv"));
  CHECK(run("trace M=4_alg2a_prc-only_t0 --out " + out) == 0);
  CHECK(slurp(dir / "log.txt").rfind("iteration,objective,gamma", 0) == 0);
  CHECK(run("trace M=4_nope_t0 --out " + out) == 1);
  CHECK(run("run " + (dir / "bad.cfg").string()) == 2);
  CHECK(slurp(dir / "log.txt").find("bad.cfg:10:") != std::string::npos);
  CHECK(run("run " + (dir / "fail.cfg").string() + " --out " + out) == 3);
  CHECK(run("run " + (dir / "good.cfg").string() + " --trials 0") == 2);
  CHECK(run("frobnicate") == 2);
  fs::remove_all(dir);
}
#endif

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

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "risopt/config.hpp"
#include "risopt/errors.hpp"
#include "risopt/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kAllFailed = 3;

int cmd_run(const std::string& config, const std::optional<std::string>& out, std::optional<int> trials,
            std::optional<std::uint64_t> seed, std::optional<int> threads) {
  risopt::ExperimentSpec spec;
  try {
    spec = risopt::load_config(config);
    if (out) spec.out_dir = *out;
    if (trials) spec.trials = *trials;
    if (seed) spec.scenario.seed = *seed;
    if (threads) spec.threads = *threads;
    spec.validate();
  } catch (const risopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const auto results = risopt::run_experiment(spec, spec.threads);
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (r.ok()) continue;
    ++failed;
    std::cerr << "trial " << r.run_id() << ": " << r.status << '\n';
  }
  risopt::write_outputs(spec.out_dir, results);
  for (const auto& row : risopt::aggregate(results))
    std::cout << row.sweep_name << '=' << row.sweep_value << "  " << row.algorithm << "  mean " << row.mean_bpshz
              << " bps/Hz  (+/- " << row.ci95_bpshz << ", " << row.succeeded << '/' << row.trials << " ok)\n";
  std::cout << "wrote " << spec.out_dir << "/data.csv, aggregate.csv, traces/\n";
  return failed == results.size() ? kAllFailed : 0;
}

int cmd_trace(const std::string& run_id, const std::string& out) {
  const auto path = std::filesystem::path(out) / "traces" / (run_id + ".csv");
  std::ifstream in(path);
  if (!in) {
    std::cerr << "unknown run id: " << run_id << " (looked in " << path.string() << ")\n";
    return 1;
  }
  std::cout << in.rdbuf();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS phase configuration and transmit time-switching experiments"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::string> out;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  auto* run = app.add_subcommand("run", "Run a Monte-Carlo sweep");
  run->add_option("config", config, "Key=value configuration file")->required();
  run->add_option("--out", out, "Output directory (overrides out_dir)");
  run->add_option("--trials", trials, "Trials per sweep point");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--threads", threads, "Worker threads");

  std::string run_id;
  std::string trace_out = "out";
  auto* trace = app.add_subcommand("trace", "Print the convergence trace of one run");
  trace->add_option("run-id", run_id, "Run id, e.g. M=12_alg2a_prc-only_t0")->required();
  trace->add_option("--out", trace_out, "Output directory of the run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }
  try {
    if (*run) return cmd_run(config, out, trials, seed, threads);
    return cmd_trace(run_id, trace_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

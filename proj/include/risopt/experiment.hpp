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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risopt/config.hpp"

namespace risopt {

struct TraceRow {
  int iteration = 0;
  std::optional<double> objective;  // PRC stage
  std::optional<double> gamma;      // delivery stage
};

struct TrialResult {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string algorithm;
  int trial = 0;
  std::uint64_t seed = 0;
  double min_throughput_nats = 0.0;
  int iterations = 0;      // delivery stage
  int prc_iterations = 0;
  std::string status = "ok";
  double wall_ms = 0.0;
  std::vector<TraceRow> trace;

  bool ok() const { return status == "ok"; }
  double min_throughput_bpshz() const;
  /// File stem of the convergence trace, e.g. "M=12_alg2a_prc-only_t3".
  std::string run_id() const;
};

struct AggregateRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string algorithm;
  int trials = 0;
  int succeeded = 0;
  double mean_nats = 0.0;
  double mean_bpshz = 0.0;
  double ci95_bpshz = 0.0;
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  double mean_prc_iterations = 0.0;
};

/// Channel seed shared by every algorithm at (sweep value, trial).
std::uint64_t trial_seed(std::uint64_t master, double sweep_value, int trial);

struct TrialLimits {
  int prc_max_iter = 500;
  double prc_tol = 1e-3;
  int swipt_max_iter = 100;
  double swipt_tol = 1e-3;
};

/// Runs one (scenario, algorithm) pair on the channel drawn from `seed`.
/// Failures are reported in `status`, never thrown.
TrialResult run_trial(const Scenario& scenario, const AlgorithmSpec& algorithm, std::uint64_t seed,
                      const TrialLimits& limits = {});

/// Every (sweep value, algorithm, trial) in deterministic order.
std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, int threads);

std::vector<AggregateRow> aggregate(const std::vector<TrialResult>& results);

void write_data_csv(std::ostream& out, const std::vector<TrialResult>& results);
void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);

/// Writes data.csv, aggregate.csv and traces/ under `dir`.
void write_outputs(const std::string& dir, const std::vector<TrialResult>& results);

}  // namespace risopt

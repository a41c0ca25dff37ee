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
#include <string>
#include <vector>

#include "risopt/channel.hpp"

namespace risopt {

enum class PrcAlgorithm { Alg1Plain, Alg1BB, Alg1PBB, Alg2A, Alg2B, Alg3, Alg4, Alg5, RandomTheta };
enum class Delivery { PrcOnly, ZfSwipt, RzfSwipt, IgsSwipt, InfoOnly };

struct AlgorithmSpec {
  PrcAlgorithm prc = PrcAlgorithm::Alg2A;
  Delivery delivery = Delivery::PrcOnly;

  /// "alg2a:prc-only" style label.
  std::string label() const;
  static AlgorithmSpec parse(const std::string& text);
};

std::string to_string(PrcAlgorithm a);
std::string to_string(Delivery d);

struct ExperimentSpec {
  Scenario scenario;  // scenario.seed is the master seed
  std::string sweep = "M";
  std::vector<double> sweep_values;
  std::vector<AlgorithmSpec> algorithms;
  int trials = 1;
  std::string out_dir = "out";
  int threads = 1;
  int prc_max_iter = 500;
  double prc_tol = 1e-3;
  int swipt_max_iter = 100;
  double swipt_tol = 1e-3;

  /// Throws ConfigError.
  void validate() const;
};

/// Scenario with the sweep axis set to `value`.
Scenario apply_sweep(const Scenario& base, const std::string& axis, double value);

/// Parses the key=value format; errors carry `source:line`.
ExperimentSpec parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentSpec load_config(const std::string& path);

}  // namespace risopt

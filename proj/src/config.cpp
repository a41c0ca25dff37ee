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

#include "risopt/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "risopt/errors.hpp"

namespace risopt {

namespace {

constexpr std::array<std::pair<PrcAlgorithm, const char*>, 9> kPrcNames{{
    {PrcAlgorithm::Alg1Plain, "alg1-plain"},
    {PrcAlgorithm::Alg1BB, "alg1-bb"},
    {PrcAlgorithm::Alg1PBB, "alg1-pbb"},
    {PrcAlgorithm::Alg2A, "alg2a"},
    {PrcAlgorithm::Alg2B, "alg2b"},
    {PrcAlgorithm::Alg3, "alg3"},
    {PrcAlgorithm::Alg4, "alg4"},
    {PrcAlgorithm::Alg5, "alg5"},
    {PrcAlgorithm::RandomTheta, "random-theta"},
}};

constexpr std::array<std::pair<Delivery, const char*>, 5> kDeliveryNames{{
    {Delivery::PrcOnly, "prc-only"},
    {Delivery::ZfSwipt, "zf-swipt"},
    {Delivery::RzfSwipt, "rzf-swipt"},
    {Delivery::IgsSwipt, "igs-swipt"},
    {Delivery::InfoOnly, "info-only"},
}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end || !std::isfinite(x)) throw ConfigError("expected a number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || p != end) throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& v) {
  const long long x = to_integer(v);
  if (x < -1000000000LL || x > 1000000000LL) throw ConfigError("integer out of range: " + v);
  return static_cast<int>(x);
}

using Setter = std::function<void(ExperimentSpec&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto dbl = [&t](const std::string& key, double Scenario::*field) {
      t[key] = [field](ExperimentSpec& s, const std::string& v) { s.scenario.*field = to_double(v); };
    };
    auto vec = [&t](const std::string& prefix, Vec3 Scenario::*field) {
      t[prefix + "_x_m"] = [field](ExperimentSpec& s, const std::string& v) { (s.scenario.*field).x = to_double(v); };
      t[prefix + "_y_m"] = [field](ExperimentSpec& s, const std::string& v) { (s.scenario.*field).y = to_double(v); };
      t[prefix + "_z_m"] = [field](ExperimentSpec& s, const std::string& v) { (s.scenario.*field).z = to_double(v); };
    };
    t["M"] = [](ExperimentSpec& s, const std::string& v) { s.scenario.M = to_int(v); };
    t["N"] = [](ExperimentSpec& s, const std::string& v) { s.scenario.N = to_int(v); };
    t["K"] = [](ExperimentSpec& s, const std::string& v) { s.scenario.K = to_int(v); };
    t["K_E"] = [](ExperimentSpec& s, const std::string& v) { s.scenario.K_E = to_int(v); };
    dbl("P_dBm", &Scenario::P_dBm);
    dbl("sigma_dBm", &Scenario::sigma_dBm);
    dbl("e_min_dBm", &Scenario::e_min_dBm);
    dbl("zeta", &Scenario::zeta);
    dbl("alpha_rzf", &Scenario::alpha_rzf);
    dbl("rician_K", &Scenario::rician_K);
    dbl("G_BS_dBi", &Scenario::G_BS_dBi);
    dbl("G_RIS_dBi", &Scenario::G_RIS_dBi);
    vec("bs", &Scenario::bs);
    vec("ris", &Scenario::ris);
    dbl("iu_x_min_m", &Scenario::iu_x_min_m);
    dbl("iu_x_max_m", &Scenario::iu_x_max_m);
    dbl("iu_y_min_m", &Scenario::iu_y_min_m);
    dbl("iu_y_max_m", &Scenario::iu_y_max_m);
    dbl("iu_z_m", &Scenario::iu_z_m);
    dbl("eu_radius_m", &Scenario::eu_radius_m);
    dbl("eu_z_m", &Scenario::eu_z_m);
    t["seed"] = [](ExperimentSpec& s, const std::string& v) {
      const long long x = to_integer(v);
      if (x < 0) throw ConfigError("seed must be non-negative");
      s.scenario.seed = static_cast<std::uint64_t>(x);
    };
    t["sweep"] = [](ExperimentSpec& s, const std::string& v) { s.sweep = v; };
    t["sweep_values"] = [](ExperimentSpec& s, const std::string& v) {
      s.sweep_values.clear();
      for (const auto& item : split(v, ',')) s.sweep_values.push_back(to_double(item));
    };
    t["algorithms"] = [](ExperimentSpec& s, const std::string& v) {
      s.algorithms.clear();
      for (const auto& item : split(v, ',')) s.algorithms.push_back(AlgorithmSpec::parse(item));
    };
    t["trials"] = [](ExperimentSpec& s, const std::string& v) { s.trials = to_int(v); };
    t["out_dir"] = [](ExperimentSpec& s, const std::string& v) { s.out_dir = v; };
    t["threads"] = [](ExperimentSpec& s, const std::string& v) { s.threads = to_int(v); };
    t["prc_max_iter"] = [](ExperimentSpec& s, const std::string& v) { s.prc_max_iter = to_int(v); };
    t["prc_tol"] = [](ExperimentSpec& s, const std::string& v) { s.prc_tol = to_double(v); };
    t["swipt_max_iter"] = [](ExperimentSpec& s, const std::string& v) { s.swipt_max_iter = to_int(v); };
    t["swipt_tol"] = [](ExperimentSpec& s, const std::string& v) { s.swipt_tol = to_double(v); };
    return t;
  }();
  return table;
}

}  // namespace

std::string to_string(PrcAlgorithm a) {
  for (const auto& [k, name] : kPrcNames)
    if (k == a) return name;
  return "?";
}

std::string to_string(Delivery d) {
  for (const auto& [k, name] : kDeliveryNames)
    if (k == d) return name;
  return "?";
}

std::string AlgorithmSpec::label() const { return to_string(prc) + ":" + to_string(delivery); }

AlgorithmSpec AlgorithmSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string prc = trim(text.substr(0, colon));
  const std::string delivery = colon == std::string::npos ? "prc-only" : trim(text.substr(colon + 1));
  AlgorithmSpec spec;
  bool found = false;
  for (const auto& [k, name] : kPrcNames)
    if (prc == name) {
      spec.prc = k;
      found = true;
    }
  if (!found) throw ConfigError("unknown algorithm '" + prc + "'");
  found = false;
  for (const auto& [k, name] : kDeliveryNames)
    if (delivery == name) {
      spec.delivery = k;
      found = true;
    }
  if (!found) throw ConfigError("unknown delivery mode '" + delivery + "'");
  return spec;
}

void ExperimentSpec::validate() const {
  static const std::set<std::string> axes{"M", "N", "P_dBm", "K"};
  if (!axes.contains(sweep)) throw ConfigError("sweep must be one of M, N, P_dBm, K");
  if (sweep_values.empty()) throw ConfigError("sweep_values is empty");
  for (std::size_t i = 1; i < sweep_values.size(); ++i)
    if (!(sweep_values[i] > sweep_values[i - 1])) throw ConfigError("sweep_values must be strictly increasing");
  if (sweep != "P_dBm")
    for (double v : sweep_values)
      if (v != std::floor(v)) throw ConfigError("sweep over " + sweep + " needs integer values");
  if (algorithms.empty()) throw ConfigError("algorithms is empty");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (prc_max_iter < 1 || swipt_max_iter < 1) throw ConfigError("iteration limits must be positive");
  if (!(prc_tol > 0.0) || !(swipt_tol > 0.0)) throw ConfigError("tolerances must be positive");
  for (double v : sweep_values) {
    try {
      apply_sweep(scenario, sweep, v).validate();
    } catch (const InvalidScenario& e) {
      throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
  }
}

Scenario apply_sweep(const Scenario& base, const std::string& axis, double value) {
  Scenario s = base;
  if (axis == "M") s.M = static_cast<int>(value);
  else if (axis == "N") s.N = static_cast<int>(value);
  else if (axis == "K") s.K = static_cast<int>(value);
  else if (axis == "P_dBm") s.P_dBm = value;
  else throw ConfigError("unknown sweep axis '" + axis + "'");
  return s;
}

ExperimentSpec parse_config(std::istream& in, const std::string& source) {
  ExperimentSpec spec;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto where = source + ":" + std::to_string(lineno) + ": ";
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "empty value for '" + key + "'");
    try {
      it->second(spec, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return parse_config(in, path);
}

}  // namespace risopt

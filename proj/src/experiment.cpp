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

#include "risopt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "risopt/errors.hpp"
#include "risopt/rzf_prc.hpp"
#include "risopt/swipt.hpp"
#include "risopt/zf_prc.hpp"

namespace risopt {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

bool zf_family(PrcAlgorithm a) {
  return a == PrcAlgorithm::Alg1Plain || a == PrcAlgorithm::Alg1BB || a == PrcAlgorithm::Alg1PBB ||
         a == PrcAlgorithm::Alg2A || a == PrcAlgorithm::Alg2B;
}

}  // namespace

double TrialResult::min_throughput_bpshz() const { return min_throughput_nats * std::numbers::log2e; }

std::string TrialResult::run_id() const {
  std::string alg = algorithm;
  std::replace(alg.begin(), alg.end(), ':', '_');
  return sweep_name + "=" + format_value(sweep_value) + "_" + alg + "_t" + std::to_string(trial);
}

std::uint64_t trial_seed(std::uint64_t master, double sweep_value, int trial) {
  std::uint64_t h = splitmix(master);
  h = splitmix(h ^ std::bit_cast<std::uint64_t>(sweep_value));
  return splitmix(h ^ static_cast<std::uint64_t>(trial));
}

TrialResult run_trial(const Scenario& base, const AlgorithmSpec& algorithm, std::uint64_t seed,
                      const TrialLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  TrialResult r;
  r.algorithm = algorithm.label();
  r.seed = seed;
  try {
    Scenario scenario = base;
    scenario.seed = seed;
    const ChannelSet ch = generate(scenario);
    const PhaseVector theta0 = random_phases(ch.N, splitmix(seed ^ 0x5bd1e995ULL));
    const double alpha = scenario.alpha_rzf > 0.0 ? scenario.alpha_rzf : default_rzf_alpha(ch, theta0);

    PrcOptions po;
    po.max_iter = limits.prc_max_iter;
    po.tol = limits.prc_tol;
    po.seed = seed;
    PrcRunReport prc;
    switch (algorithm.prc) {
      case PrcAlgorithm::Alg1Plain: prc = step_descent(ch, theta0, StepRule::Plain, po); break;
      case PrcAlgorithm::Alg1BB: prc = step_descent(ch, theta0, StepRule::BB, po); break;
      case PrcAlgorithm::Alg1PBB: prc = step_descent(ch, theta0, StepRule::PBB, po); break;
      case PrcAlgorithm::Alg2A: prc = full_step_concave(ch, theta0, 0.0, po); break;
      case PrcAlgorithm::Alg2B: prc = full_step_perturbed(ch, theta0, 0.0, po); break;
      case PrcAlgorithm::Alg3: prc = rzf_trace_maximize(ch, theta0, alpha, po); break;
      case PrcAlgorithm::Alg4: prc = logdet_step_descent(ch, theta0, alpha, StepRule::PBB, po); break;
      case PrcAlgorithm::Alg5: prc = logdet_full_step(ch, theta0, alpha, po); break;
      case PrcAlgorithm::RandomTheta: prc.theta_opt = theta0; break;
    }
    r.prc_iterations = prc.iterations;
    for (std::size_t i = 0; i < prc.objective_trace.size(); ++i)
      r.trace.push_back({static_cast<int>(i), prc.objective_trace[i], std::nullopt});

    SwiptOptions so;
    so.max_iter = limits.swipt_max_iter;
    so.tol = limits.swipt_tol;
    so.seed = seed;
    std::optional<PathFollowResult> pf;
    switch (algorithm.delivery) {
      case Delivery::PrcOnly:
        if (!zf_family(algorithm.prc) && algorithm.prc != PrcAlgorithm::RandomTheta)
          pf = info_only(scenario, ch, prc.theta_opt, alpha, Signaling::Proper, so);
        else
          r.min_throughput_nats = zf_throughput(ch, prc.theta_opt, scenario.P(), scenario.sigma());
        break;
      case Delivery::ZfSwipt: pf = path_follow_zf(scenario, ch, prc.theta_opt, so); break;
      case Delivery::RzfSwipt: pf = path_follow_rzf(scenario, ch, prc.theta_opt, alpha, so); break;
      case Delivery::IgsSwipt: pf = path_follow_igs(scenario, ch, prc.theta_opt, alpha, so); break;
      case Delivery::InfoOnly: pf = info_only(scenario, ch, prc.theta_opt, alpha, Signaling::Proper, so); break;
    }
    if (pf) {
      r.min_throughput_nats = pf->state.gamma;
      r.iterations = pf->iterations;
      if (pf->status != "ok") r.status = pf->status;
      for (std::size_t i = 0; i < pf->gamma_trace.size(); ++i)
        r.trace.push_back({static_cast<int>(i), std::nullopt, pf->gamma_trace[i]});
    }
  } catch (const std::exception& e) {
    std::string what = e.what();
    std::replace(what.begin(), what.end(), ',', ';');
    std::replace(what.begin(), what.end(), '\n', ' ');
    r.status = "error: " + what;
    r.min_throughput_nats = std::nan("");
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<TrialResult> run_experiment(const ExperimentSpec& spec, int threads) {
  spec.validate();
  struct Job {
    double value;
    std::size_t alg;
    int trial;
  };
  std::vector<Job> jobs;
  for (double v : spec.sweep_values)
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a)
      for (int t = 0; t < spec.trials; ++t) jobs.push_back({v, a, t});

  const TrialLimits limits{spec.prc_max_iter, spec.prc_tol, spec.swipt_max_iter, spec.swipt_tol};
  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& j = jobs[i];
      const Scenario s = apply_sweep(spec.scenario, spec.sweep, j.value);
      TrialResult r = run_trial(s, spec.algorithms[j.alg], trial_seed(spec.scenario.seed, j.value, j.trial), limits);
      r.sweep_name = spec.sweep;
      r.sweep_value = j.value;
      r.trial = j.trial;
      results[i] = std::move(r);
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  return results;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialResult>& results) {
  std::vector<AggregateRow> rows;
  std::map<std::pair<double, std::string>, std::size_t> index;
  std::vector<std::vector<const TrialResult*>> groups;
  for (const auto& r : results) {
    const auto key = std::make_pair(r.sweep_value, r.algorithm);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      AggregateRow row;
      row.sweep_name = r.sweep_name;
      row.sweep_value = r.sweep_value;
      row.algorithm = r.algorithm;
      rows.push_back(row);
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (std::size_t g = 0; g < rows.size(); ++g) {
    AggregateRow& row = rows[g];
    row.trials = static_cast<int>(groups[g].size());
    std::vector<double> nats, iters;
    double prc = 0.0;
    for (const TrialResult* r : groups[g]) {
      if (!r->ok()) continue;
      nats.push_back(r->min_throughput_nats);
      iters.push_back(r->iterations);
      prc += r->prc_iterations;
    }
    row.succeeded = static_cast<int>(nats.size());
    if (nats.empty()) {
      row.mean_nats = row.mean_bpshz = row.ci95_bpshz = std::nan("");
      row.mean_iterations = row.median_iterations = row.mean_prc_iterations = std::nan("");
      continue;
    }
    const double n = static_cast<double>(nats.size());
    double sum = 0.0;
    for (double v : nats) sum += v;
    row.mean_nats = sum / n;
    row.mean_bpshz = row.mean_nats * std::numbers::log2e;
    double ss = 0.0;
    for (double v : nats) ss += (v - row.mean_nats) * (v - row.mean_nats);
    row.ci95_bpshz = nats.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) * std::numbers::log2e : 0.0;
    double it_sum = 0.0;
    for (double v : iters) it_sum += v;
    row.mean_iterations = it_sum / n;
    std::sort(iters.begin(), iters.end());
    const std::size_t m = iters.size();
    row.median_iterations = m % 2 ? iters[m / 2] : 0.5 * (iters[m / 2 - 1] + iters[m / 2]);
    row.mean_prc_iterations = prc / n;
  }
  return rows;
}

void write_data_csv(std::ostream& out, const std::vector<TrialResult>& results) {
  out << "sweep_name,sweep_value,algorithm,trial,seed,min_throughput_nats,min_throughput_bpshz,iterations,"
         "prc_iterations,status,wall_ms\n";
  for (const auto& r : results) {
    out << r.sweep_name << ',' << format_value(r.sweep_value) << ',' << r.algorithm << ',' << r.trial << ','
        << r.seed << ',' << format_real(r.min_throughput_nats) << ',' << format_real(r.min_throughput_bpshz()) << ','
        << r.iterations << ',' << r.prc_iterations << ',' << r.status << ',' << std::fixed << std::setprecision(3)
        << r.wall_ms << std::defaultfloat << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows) {
  out << "sweep_name,sweep_value,algorithm,trials,succeeded,mean_nats,mean_bpshz,ci95_bpshz,mean_iterations,"
         "median_iterations,mean_prc_iterations\n";
  for (const auto& r : rows) {
    out << r.sweep_name << ',' << format_value(r.sweep_value) << ',' << r.algorithm << ',' << r.trials << ','
        << r.succeeded << ',' << format_real(r.mean_nats) << ',' << format_real(r.mean_bpshz) << ','
        << format_real(r.ci95_bpshz) << ',' << format_real(r.mean_iterations) << ','
        << format_real(r.median_iterations) << ',' << format_real(r.mean_prc_iterations) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "iteration,objective,gamma\n";
  for (const auto& t : trace) {
    out << t.iteration << ',';
    if (t.objective) out << format_real(*t.objective);
    out << ',';
    if (t.gamma) out << format_real(*t.gamma);
    out << '\n';
  }
}

void write_outputs(const std::string& dir, const std::vector<TrialResult>& results) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root / "traces");
  auto open = [](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw Error("cannot write " + p.string());
    return f;
  };
  {
    auto f = open(root / "data.csv");
    write_data_csv(f, results);
  }
  {
    auto f = open(root / "aggregate.csv");
    write_aggregate_csv(f, aggregate(results));
  }
  for (const auto& r : results) {
    auto f = open(root / "traces" / (r.run_id() + ".csv"));
    write_trace_csv(f, r.trace);
  }
}

}  // namespace risopt

// Copyright 2026 The pairing-tsp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Experiment harness. Every trial draws a uniform instance, recovers its
// tilde matrix through the sum-only oracle, solves on the recovered matrix
// and scores the result against the hidden one.

#ifndef PAIRING_BENCH_HPP_
#define PAIRING_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pairing/core.hpp"
#include "pairing/solvers.hpp"

namespace pairing {

struct PerformanceIndicator {
  double p = 0.0;
};

// (score - N/2 c_min) / (N/2 (c_max - c_min)). Throws ValidationError when
// c_max <= c_min or the score falls outside [N/2 c_min, N/2 c_max].
PerformanceIndicator performance_indicator(PairingScore score, int n, double c_min, double c_max);

// Off-diagonal entries i < j drawn i.i.d. uniform on [c_min, c_max] in
// row-major order from mt19937_64(seed).
Instance generate_instance(int n, double c_min, double c_max, std::uint64_t seed);

// splitmix64 finalizer.
std::uint64_t mix_seed(std::uint64_t x);

// Per-trial seed: the master seed hashed together with the setting and
// trial indices, so any trial can be replayed on its own.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t setting, std::uint64_t trial);

enum class Study { kPerformance, kExchangeLimitSweep, kNoc, kInitialNode };

std::string_view study_name(Study study);  // perf, sweep, noc, start
Study parse_study(std::string_view name);

struct ExperimentSpec {
  std::vector<int> n_values;
  int trials = 100;
  double c_min = 0.0;
  double c_max = 10000.0;
  std::vector<std::int64_t> exchange_limits = {kDefaultExchangeLimit};
  std::vector<Algorithm> algorithms;
  std::uint64_t master_seed = 1;
  std::optional<int> start_node = 1;  // nullopt: random start per trial
  bool timing = false;                // off keeps output byte-reproducible
  int threads = 0;                    // 0: PAIRING_TSP_THREADS or hardware
};

// Defaults per study finish in seconds; `full` sweeps N up to 1000 (2000 for
// the noc study).
ExperimentSpec default_spec(Study study, bool full);

// Overlays the keys present in `doc` onto `base` and validates the result.
// Unknown keys are errors.
ExperimentSpec parse_experiment_spec(const nlohmann::json& doc, ExperimentSpec base);
nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec);

// Throws ValidationError for empty lists, trials < 1, odd n, or
// c_max <= c_min.
void validate_spec(const ExperimentSpec& spec);

struct TrialRecord {
  int n = 0;
  std::string algo;  // algorithm name, with "@l=" or "@start=" for sweeps
  int trial = 0;
  std::uint64_t seed = 0;
  double p = 0.0;
  std::uint64_t noc = 0;
  std::uint64_t exchanges = 0;
  std::uint64_t observations = 0;
  double millis = 0.0;
};

struct SettingSummary {
  int n = 0;
  std::string algo;
  std::int64_t exchange_limit = 0;
  std::size_t count = 0;
  double mean_p = 0.0;
  double std_p = 0.0;
  double mean_noc = 0.0;
  double std_noc = 0.0;
  double mean_observations = 0.0;
  double mean_millis = 0.0;
  // Initial-node study only: mean over instances of the std of P across
  // all start nodes.
  std::optional<double> mean_start_std;
};

// Mean checks per exchange loop; converged trials contribute zeros.
struct NocTrace {
  int n = 0;
  std::vector<double> mean_checks;
};

struct ExperimentReport {
  Study study = Study::kPerformance;
  ExperimentSpec spec;
  std::vector<SettingSummary> settings;
  std::vector<NocTrace> traces;
  std::vector<TrialRecord> records;

  const SettingSummary& setting(int n, std::string_view algo) const;
};

ExperimentReport run_performance_study(const ExperimentSpec& spec);
ExperimentReport run_exchange_limit_sweep(const ExperimentSpec& spec);
ExperimentReport run_noc_study(const ExperimentSpec& spec);
ExperimentReport run_initial_node_study(const ExperimentSpec& spec);
ExperimentReport run_study(Study study, const ExperimentSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "n,algo,trial,seed,p,noc,exchanges,observations,millis";

std::string report_to_csv(const ExperimentReport& report);
nlohmann::json report_to_json(const ExperimentReport& report);

// Sample mean and standard deviation (n - 1 denominator; 0 for one value).
double mean_of(const std::vector<double>& values);
double stddev_of(const std::vector<double>& values);

// Worker count: spec.threads if positive, else PAIRING_TSP_THREADS capped by
// the hardware, else the hardware concurrency.
int worker_count(int requested);

}  // namespace pairing

#endif  // PAIRING_BENCH_HPP_

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

#include "pairing/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "pairing/instance_io.hpp"
#include "pairing/observation.hpp"
#include "pairing/oracle.hpp"

namespace pairing {

PerformanceIndicator performance_indicator(PairingScore score, int n, double c_min, double c_max) {
  if (!(c_max > c_min)) throw ValidationError("performance indicator needs c_max > c_min");
  const double half = n / 2.0;
  const double low = half * c_min;
  const double high = half * c_max;
  // Slack of a few ulps for sums accumulated in a different order.
  const double slack = 1e-12 * std::max({std::abs(low), std::abs(high), 1.0});
  if (score.value < low - slack || score.value > high + slack) {
    throw ValidationError("score " + format_number(score.value) + " lies outside [" +
                          format_number(low) + ", " + format_number(high) +
                          "]; the declared bounds are violated");
  }
  return {(score.value - low) / (high - low)};
}

Instance generate_instance(int n, double c_min, double c_max, std::uint64_t seed) {
  require_valid_element_count(n);
  if (!(c_min <= c_max)) throw ValidationError("c_min must not exceed c_max");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(c_min, c_max);
  SymmetricMatrix<double> c(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) c.set(i, j, c_min == c_max ? c_min : dist(rng));
  }
  return Instance(std::move(c), c_min, c_max);
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t setting, std::uint64_t trial) {
  return mix_seed(mix_seed(mix_seed(master) ^ setting) ^ trial);
}

std::string_view study_name(Study study) {
  switch (study) {
    case Study::kPerformance:
      return "perf";
    case Study::kExchangeLimitSweep:
      return "sweep";
    case Study::kNoc:
      return "noc";
    case Study::kInitialNode:
      return "start";
  }
  throw InternalError("unknown study");
}

Study parse_study(std::string_view name) {
  for (Study s :
       {Study::kPerformance, Study::kExchangeLimitSweep, Study::kNoc, Study::kInitialNode}) {
    if (study_name(s) == name) return s;
  }
  throw ValidationError("unknown study '" + std::string(name) +
                        "' (expected perf, sweep, noc or start)");
}

namespace {

std::vector<int> stepped(int from, int to, int step) {
  std::vector<int> out;
  for (int n = from; n <= to; n += step) out.push_back(n);
  return out;
}

}  // namespace

ExperimentSpec default_spec(Study study, bool full) {
  ExperimentSpec spec;
  switch (study) {
    case Study::kPerformance:
      spec.n_values = full ? stepped(100, 1000, 100) : std::vector<int>{100, 200};
      spec.algorithms = {Algorithm::kRandom, Algorithm::kPnn, Algorithm::kPnnP2opt};
      break;
    case Study::kExchangeLimitSweep:
      spec.n_values = full ? stepped(100, 1000, 100) : std::vector<int>{100};
      spec.exchange_limits = {0, 25, 50, 100, 200, 400, 600};
      spec.algorithms = {Algorithm::kPnnP2opt};
      break;
    case Study::kNoc:
      spec.n_values = full ? stepped(100, 2000, 100) : stepped(20, 200, 20);
      spec.algorithms = {Algorithm::kPnnP2opt};
      break;
    case Study::kInitialNode:
      spec.n_values = full ? stepped(100, 1000, 100) : std::vector<int>{100};
      spec.algorithms = {Algorithm::kPnn, Algorithm::kPnnP2opt};
      break;
  }
  return spec;
}

ExperimentSpec parse_experiment_spec(const nlohmann::json& doc, ExperimentSpec spec) {
  if (!doc.is_object()) throw ValidationError("experiment spec must be a JSON object");
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "n_values") {
        spec.n_values = value.get<std::vector<int>>();
      } else if (key == "trials") {
        spec.trials = value.get<int>();
      } else if (key == "value_range") {
        const auto range = value.get<std::vector<double>>();
        if (range.size() != 2) throw ValidationError("value_range must be [c_min, c_max]");
        spec.c_min = range[0];
        spec.c_max = range[1];
      } else if (key == "c_min") {
        spec.c_min = value.get<double>();
      } else if (key == "c_max") {
        spec.c_max = value.get<double>();
      } else if (key == "exchange_limit" || key == "exchange_limits") {
        spec.exchange_limits = value.is_array()
                                   ? value.get<std::vector<std::int64_t>>()
                                   : std::vector<std::int64_t>{value.get<std::int64_t>()};
      } else if (key == "algorithms") {
        spec.algorithms.clear();
        for (const auto& name : value)
          spec.algorithms.push_back(parse_algorithm(name.get<std::string>()));
      } else if (key == "master_seed") {
        spec.master_seed = value.get<std::uint64_t>();
      } else if (key == "start_node") {
        if (value.is_string()) {
          if (value.get<std::string>() != "random") {
            throw ValidationError("start_node must be an index or \"random\"");
          }
          spec.start_node.reset();
        } else {
          spec.start_node = value.get<int>();
        }
      } else if (key == "timing") {
        spec.timing = value.get<bool>();
      } else if (key == "threads") {
        spec.threads = value.get<int>();
      } else {
        throw ValidationError("unknown experiment spec key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed experiment spec: ") + e.what());
  }
  validate_spec(spec);
  return spec;
}

nlohmann::json experiment_spec_to_json(const ExperimentSpec& spec) {
  nlohmann::json algorithms = nlohmann::json::array();
  for (Algorithm a : spec.algorithms) algorithms.push_back(std::string(algorithm_name(a)));
  nlohmann::json doc = {{"n_values", spec.n_values},
                        {"trials", spec.trials},
                        {"value_range", {spec.c_min, spec.c_max}},
                        {"exchange_limits", spec.exchange_limits},
                        {"algorithms", std::move(algorithms)},
                        {"master_seed", spec.master_seed},
                        {"timing", spec.timing}};
  if (spec.start_node) {
    doc["start_node"] = *spec.start_node;
  } else {
    doc["start_node"] = "random";
  }
  return doc;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.n_values.empty()) throw ValidationError("n_values must not be empty");
  for (int n : spec.n_values) require_valid_element_count(n);
  if (spec.trials < 1) throw ValidationError("trials must be at least 1");
  if (!(spec.c_max > spec.c_min)) throw ValidationError("c_max must exceed c_min");
  if (spec.exchange_limits.empty()) throw ValidationError("exchange limits must not be empty");
  for (auto l : spec.exchange_limits) {
    if (l < 0) throw ValidationError("exchange limits must be non-negative");
  }
  if (spec.algorithms.empty()) throw ValidationError("algorithms must not be empty");
  if (spec.start_node) {
    for (int n : spec.n_values) {
      if (*spec.start_node < 1 || *spec.start_node > n) {
        throw ValidationError("start node " + std::to_string(*spec.start_node) + " is outside 1.." +
                              std::to_string(n));
      }
    }
  }
}

int worker_count(int requested) {
  int workers = requested > 0 ? requested
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("PAIRING_TSP_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) workers = std::min(workers, cap);
  }
  return std::max(1, workers);
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = mean_of(values);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return std::sqrt(sq / static_cast<double>(values.size() - 1));
}

const SettingSummary& ExperimentReport::setting(int n, std::string_view algo) const {
  for (const SettingSummary& s : settings) {
    if (s.n == n && s.algo == algo) return s;
  }
  throw ValidationError("report has no setting n=" + std::to_string(n) +
                        " algo=" + std::string(algo));
}

namespace {

// Runs body(0..count-1) on a pool of workers. Results must be written to
// slots owned by the index, which keeps aggregation order-independent.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const int pool = static_cast<int>(std::min<std::size_t>(std::max(workers, 1), count));
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

// One drawn instance after the observation phase.
struct PreparedTrial {
  int n;
  int trial;
  std::uint64_t seed;
  Instance instance;
  TildeMatrix tilde;
  std::uint64_t observations;
};

PreparedTrial prepare_trial(const ExperimentSpec& spec, int n, int trial) {
  const std::uint64_t seed = derive_seed(spec.master_seed, static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(trial));
  Instance instance = generate_instance(n, spec.c_min, spec.c_max, seed);
  ObservationOracle oracle(instance);
  Reconstruction rec = reconstruct_tilde(oracle);
  return {n, trial, seed, std::move(instance), std::move(rec.tilde), rec.observations};
}

std::uint64_t solver_seed(std::uint64_t trial_seed) { return mix_seed(trial_seed ^ 0x50a1u); }

struct Solved {
  TrialRecord record;
  SolveResult result;
};

Solved run_solver(const ExperimentSpec& spec, const PreparedTrial& prepared, Algorithm algo,
                  const SolverConfig& config, std::string label) {
  const auto started = std::chrono::steady_clock::now();
  SolveResult result = solve(algo, prepared.tilde.t, config);
  const auto finished = std::chrono::steady_clock::now();
  const PairingScore truth = total_compatibility(prepared.instance, result.pairing);
  TrialRecord record;
  record.n = prepared.n;
  record.algo = std::move(label);
  record.trial = prepared.trial;
  record.seed = prepared.seed;
  record.p = performance_indicator(truth, prepared.n, spec.c_min, spec.c_max).p;
  record.noc = result.noc;
  record.exchanges = result.exchanges_used;
  record.observations = prepared.observations;
  if (spec.timing) {
    record.millis = std::chrono::duration<double, std::milli>(finished - started).count();
  }
  return {std::move(record), std::move(result)};
}

SolverConfig base_config(const ExperimentSpec& spec, const PreparedTrial& prepared) {
  SolverConfig config;
  config.seed = solver_seed(prepared.seed);
  config.start_node = spec.start_node;
  config.exchange_limit = spec.exchange_limits.front();
  return config;
}

std::string strip_suffix(const std::string& label) { return label.substr(0, label.find('@')); }

// Groups records by (n, key) in first-appearance order.
std::vector<SettingSummary> summarize(
    const std::vector<TrialRecord>& records,
    const std::function<std::string(const TrialRecord&)>& key,
    const std::function<std::int64_t(const std::string&)>& limit_of) {
  struct Group {
    int n;
    std::string key;
    std::vector<double> p, noc, obs, millis;
  };
  std::vector<Group> groups;
  for (const TrialRecord& r : records) {
    const std::string k = key(r);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.n == r.n && g.key == k; });
    if (it == groups.end()) {
      groups.push_back({r.n, k, {}, {}, {}, {}});
      it = std::prev(groups.end());
    }
    it->p.push_back(r.p);
    it->noc.push_back(static_cast<double>(r.noc));
    it->obs.push_back(static_cast<double>(r.observations));
    it->millis.push_back(r.millis);
  }
  std::vector<SettingSummary> out;
  for (const Group& g : groups) {
    SettingSummary s;
    s.n = g.n;
    s.algo = g.key;
    s.exchange_limit = limit_of(g.key);
    s.count = g.p.size();
    s.mean_p = mean_of(g.p);
    s.std_p = stddev_of(g.p);
    s.mean_noc = mean_of(g.noc);
    s.std_noc = stddev_of(g.noc);
    s.mean_observations = mean_of(g.obs);
    s.mean_millis = mean_of(g.millis);
    out.push_back(std::move(s));
  }
  return out;
}

struct TrialSlot {
  int n;
  int trial;
};

std::vector<TrialSlot> trial_slots(const ExperimentSpec& spec) {
  std::vector<TrialSlot> slots;
  for (int n : spec.n_values) {
    for (int t = 0; t < spec.trials; ++t) slots.push_back({n, t});
  }
  return slots;
}

template <typename Fn>
std::vector<std::vector<TrialRecord>> run_trials(const ExperimentSpec& spec, Fn per_trial) {
  validate_spec(spec);
  const auto slots = trial_slots(spec);
  std::vector<std::vector<TrialRecord>> out(slots.size());
  parallel_for(slots.size(), worker_count(spec.threads), [&](std::size_t i) {
    out[i] = per_trial(prepare_trial(spec, slots[i].n, slots[i].trial));
  });
  return out;
}

std::vector<TrialRecord> flatten(std::vector<std::vector<TrialRecord>> nested) {
  std::vector<TrialRecord> out;
  for (auto& chunk : nested) {
    for (auto& r : chunk) out.push_back(std::move(r));
  }
  return out;
}

std::string limit_label(std::int64_t limit) { return "pnn+p2opt@l=" + std::to_string(limit); }

}  // namespace

ExperimentReport run_performance_study(const ExperimentSpec& spec) {
  auto nested = run_trials(spec, [&](const PreparedTrial& prepared) {
    std::vector<TrialRecord> records;
    for (Algorithm algo : spec.algorithms) {
      records.push_back(run_solver(spec, prepared, algo, base_config(spec, prepared),
                                   std::string(algorithm_name(algo)))
                            .record);
    }
    return records;
  });
  ExperimentReport report{Study::kPerformance, spec};
  report.records = flatten(std::move(nested));
  const std::int64_t limit = spec.exchange_limits.front();
  report.settings = summarize(
      report.records, [](const TrialRecord& r) { return r.algo; },
      [&](const std::string& algo) { return algo == "pnn+p2opt" ? limit : 0; });
  return report;
}

ExperimentReport run_exchange_limit_sweep(const ExperimentSpec& spec) {
  auto nested = run_trials(spec, [&](const PreparedTrial& prepared) {
    std::vector<TrialRecord> records;
    for (std::int64_t limit : spec.exchange_limits) {
      SolverConfig config = base_config(spec, prepared);
      config.exchange_limit = limit;
      records.push_back(
          run_solver(spec, prepared, Algorithm::kPnnP2opt, config, limit_label(limit)).record);
    }
    return records;
  });
  ExperimentReport report{Study::kExchangeLimitSweep, spec};
  report.records = flatten(std::move(nested));
  report.settings = summarize(
      report.records, [](const TrialRecord& r) { return r.algo; },
      [](const std::string& label) { return std::stoll(label.substr(label.find("@l=") + 3)); });
  return report;
}

ExperimentReport run_noc_study(const ExperimentSpec& spec) {
  validate_spec(spec);
  const auto slots = trial_slots(spec);
  std::vector<TrialRecord> records(slots.size());
  std::vector<std::vector<std::uint64_t>> traces(slots.size());
  parallel_for(slots.size(), worker_count(spec.threads), [&](std::size_t i) {
    const PreparedTrial prepared = prepare_trial(spec, slots[i].n, slots[i].trial);
    Solved solved =
        run_solver(spec, prepared, Algorithm::kPnnP2opt, base_config(spec, prepared), "pnn+p2opt");
    records[i] = std::move(solved.record);
    traces[i] = std::move(solved.result.trace);
  });

  ExperimentReport report{Study::kNoc, spec};
  for (int n : spec.n_values) {
    NocTrace trace{n, {}};
    std::size_t trials = 0;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].n != n) continue;
      ++trials;
      if (traces[i].size() > trace.mean_checks.size())
        trace.mean_checks.resize(traces[i].size(), 0.0);
      for (std::size_t k = 0; k < traces[i].size(); ++k) {
        trace.mean_checks[k] += static_cast<double>(traces[i][k]);
      }
    }
    for (double& v : trace.mean_checks) v /= static_cast<double>(trials);
    report.traces.push_back(std::move(trace));
  }
  report.records = std::move(records);
  const std::int64_t limit = spec.exchange_limits.front();
  report.settings = summarize(
      report.records, [](const TrialRecord& r) { return r.algo; },
      [&](const std::string&) { return limit; });
  return report;
}

ExperimentReport run_initial_node_study(const ExperimentSpec& spec) {
  // start_std[i] holds, per algorithm, the std of P over start nodes.
  validate_spec(spec);
  const auto slots = trial_slots(spec);
  std::vector<std::vector<TrialRecord>> nested(slots.size());
  std::vector<std::vector<double>> start_std(slots.size());
  parallel_for(slots.size(), worker_count(spec.threads), [&](std::size_t i) {
    const PreparedTrial prepared = prepare_trial(spec, slots[i].n, slots[i].trial);
    for (Algorithm algo : spec.algorithms) {
      std::vector<double> ps;
      for (int start = 1; start <= prepared.n; ++start) {
        SolverConfig config = base_config(spec, prepared);
        config.start_node = start;
        // The random baseline has no start node; vary its seed instead.
        if (algo == Algorithm::kRandom) config.seed = mix_seed(config.seed + start);
        TrialRecord record =
            run_solver(spec, prepared, algo, config,
                       std::string(algorithm_name(algo)) + "@start=" + std::to_string(start))
                .record;
        ps.push_back(record.p);
        nested[i].push_back(std::move(record));
      }
      start_std[i].push_back(stddev_of(ps));
    }
  });

  ExperimentReport report{Study::kInitialNode, spec};
  report.records = flatten(std::move(nested));
  const std::int64_t limit = spec.exchange_limits.front();
  report.settings = summarize(
      report.records, [](const TrialRecord& r) { return strip_suffix(r.algo); },
      [&](const std::string& algo) { return algo == "pnn+p2opt" ? limit : 0; });
  for (SettingSummary& s : report.settings) {
    const auto pos = std::find_if(spec.algorithms.begin(), spec.algorithms.end(),
                                  [&](Algorithm a) { return algorithm_name(a) == s.algo; }) -
                     spec.algorithms.begin();
    std::vector<double> stds;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].n == s.n) stds.push_back(start_std[i][pos]);
    }
    s.mean_start_std = mean_of(stds);
  }
  return report;
}

ExperimentReport run_study(Study study, const ExperimentSpec& spec) {
  switch (study) {
    case Study::kPerformance:
      return run_performance_study(spec);
    case Study::kExchangeLimitSweep:
      return run_exchange_limit_sweep(spec);
    case Study::kNoc:
      return run_noc_study(spec);
    case Study::kInitialNode:
      return run_initial_node_study(spec);
  }
  throw InternalError("unknown study");
}

std::string report_to_csv(const ExperimentReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const TrialRecord& r : report.records) {
    out += std::to_string(r.n) + ',' + r.algo + ',' + std::to_string(r.trial) + ',' +
           std::to_string(r.seed) + ',' + format_number(r.p) + ',' + std::to_string(r.noc) + ',' +
           std::to_string(r.exchanges) + ',' + std::to_string(r.observations) + ',' +
           format_number(r.millis) + '\n';
  }
  return out;
}

nlohmann::json report_to_json(const ExperimentReport& report) {
  nlohmann::json settings = nlohmann::json::array();
  for (const SettingSummary& s : report.settings) {
    nlohmann::json item = {{"n", s.n},
                           {"algo", s.algo},
                           {"exchange_limit", s.exchange_limit},
                           {"count", s.count},
                           {"mean_p", s.mean_p},
                           {"std_p", s.std_p},
                           {"mean_noc", s.mean_noc},
                           {"std_noc", s.std_noc},
                           {"mean_observations", s.mean_observations},
                           {"mean_millis", s.mean_millis}};
    if (s.mean_start_std) item["mean_start_std"] = *s.mean_start_std;
    settings.push_back(std::move(item));
  }
  nlohmann::json traces = nlohmann::json::array();
  for (const NocTrace& t : report.traces) {
    traces.push_back({{"n", t.n}, {"mean_checks_per_loop", t.mean_checks}});
  }
  nlohmann::json records = nlohmann::json::array();
  for (const TrialRecord& r : report.records) {
    records.push_back({{"n", r.n},
                       {"algo", r.algo},
                       {"trial", r.trial},
                       {"seed", r.seed},
                       {"p", r.p},
                       {"noc", r.noc},
                       {"exchanges", r.exchanges},
                       {"observations", r.observations},
                       {"millis", r.millis}});
  }
  nlohmann::json doc = {{"study", std::string(study_name(report.study))},
                        {"spec", experiment_spec_to_json(report.spec)},
                        {"settings", std::move(settings)},
                        {"records", std::move(records)}};
  if (!report.traces.empty()) doc["traces"] = std::move(traces);
  return doc;
}

}  // namespace pairing

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

#include "pairing/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairing/bench.hpp"
#include "pairing/instance_io.hpp"
#include "pairing/observation.hpp"
#include "pairing/oracle.hpp"
#include "pairing/pairing_tsp.hpp"
#include "pairing/solvers.hpp"

namespace pairing {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
};

void emit(const GlobalOptions& global, std::ostream& out, const std::string& text) {
  if (global.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(global.out, std::ios::binary);
  if (!file) throw ValidationError("cannot write '" + global.out + "'");
  file << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json pairing_to_json(const Pairing& pairing) {
  json pairs = json::array();
  for (const Pair& p : pairing.pairs()) pairs.push_back({p.lo, p.hi});
  return pairs;
}

json matrix_rows(const SymmetricMatrix<double>& m) {
  json rows = json::array();
  for (int i = 1; i <= m.size(); ++i) {
    json row = json::array();
    for (int j = 1; j <= m.size(); ++j) row.push_back(i == j ? 0.0 : m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

SymmetricMatrix<double> tilde_from_file(const std::string& path, json& doc) {
  try {
    doc = json::parse(read_file(path));
    const int n = doc.at("n").get<int>();
    require_valid_element_count(n);
    const auto& rows = doc.at("tilde");
    if (rows.size() != static_cast<std::size_t>(n)) throw ValidationError("tilde needs n rows");
    SymmetricMatrix<double> m(n);
    for (int i = 1; i <= n; ++i) {
      if (rows[i - 1].size() != static_cast<std::size_t>(n)) {
        throw ValidationError("tilde row " + std::to_string(i) + " needs n values");
      }
      for (int j = i + 1; j <= n; ++j) {
        const double v = rows[i - 1][j - 1].get<double>();
        if (v != rows[j - 1][i - 1].get<double>()) {
          throw ValidationError("tilde matrix is not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
        }
        m.set(i, j, v);
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed tilde file: ") + e.what());
  }
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairing problem solver: sum-only observation, Pairing-TSP heuristics, studies",
               "pairing_tsp"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--out", global.out, "Write the result to this file instead of stdout");
  app.add_option("--format", global.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a uniform random instance")->fallthrough();
  int gen_n = 0;
  double gen_cmin = 0.0;
  double gen_cmax = 10000.0;
  gen->add_option("-n", gen_n, "Element count (even, >= 4)")->required();
  gen->add_option("--cmin", gen_cmin, "Lower bound of compatibilities")->capture_default_str();
  gen->add_option("--cmax", gen_cmax, "Upper bound of compatibilities")->capture_default_str();

  // observe
  auto* observe = app.add_subcommand("observe", "Recover the tilde matrix through sum-only queries")
                      ->fallthrough();
  std::string observe_path;
  std::string strategy = "reconstruct";
  bool observe_exact = false;
  bool observe_share = false;
  observe->add_option("instance", observe_path, "Instance file")->required();
  observe->add_option("--strategy", strategy, "Observation strategy")
      ->check(CLI::IsMember({"reconstruct", "minimal", "minimal-plan"}))
      ->capture_default_str();
  observe->add_flag("--exact", observe_exact, "Rational arithmetic");
  observe->add_flag("--share", observe_share, "Reuse pairings shared between rules (reconstruct)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Find a high-compatibility pairing")->fallthrough();
  std::string solve_path;
  std::string algo_name;
  std::string start_node_text;
  std::optional<std::int64_t> exchange_limit;
  std::string mode = "trusted";
  solve_cmd->add_option("file", solve_path, "Instance file, or tilde JSON with --mode tilde")
      ->required();
  solve_cmd->add_option("--algo", algo_name, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"random", "pnn", "pnn+p2opt", "exact"}));
  solve_cmd->add_option("--start-node", start_node_text, "Start element, or 'random'");
  solve_cmd->add_option("--exchange-limit", exchange_limit, "P2-opt exchange limit");
  solve_cmd
      ->add_option("--mode", mode,
                   "trusted: solve the raw matrix; observe: recover the tilde matrix "
                   "through the oracle first; tilde: the file is `observe` output")
      ->check(CLI::IsMember({"trusted", "observe", "tilde"}))
      ->capture_default_str();

  // graph
  auto* graph_cmd =
      app.add_subcommand("graph", "Dump the three-layer graph as JSON")->fallthrough();
  std::string graph_path;
  graph_cmd->add_option("instance", graph_path, "Instance file")->required();

  // bench
  auto* bench =
      app.add_subcommand("bench", "Run a study: perf, sweep, noc or start")->fallthrough();
  std::string study_text;
  std::string spec_text;
  bool full = false;
  bool timing = false;
  bench->add_option("study", study_text, "perf | sweep | noc | start")
      ->required()
      ->check(CLI::IsMember({"perf", "sweep", "noc", "start"}));
  bench->add_option("--spec", spec_text, "Experiment spec: a JSON file or inline JSON object");
  bench->add_flag("--full", full, "Large element counts, up to N = 2000");
  bench->add_flag("--timing", timing, "Record wall time per solve (output no longer reproducible)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitValidation;
  }

  auto usage_error = [&](const std::string& message, const CLI::App* sub) {
    err << "error: " << message << "\n" << sub->help();
    return kExitValidation;
  };

  try {
    if (*gen) {
      if (global.format == "csv") return usage_error("gen writes text or json, not csv", gen);
      const Instance instance = generate_instance(gen_n, gen_cmin, gen_cmax, global.seed);
      emit(global, out,
           global.format == "json" ? dump(instance_to_json(instance))
                                   : format_instance_text(instance));
      return kExitOk;
    }

    if (*observe) {
      if (global.format == "csv") return usage_error("observe writes json", observe);
      if (observe_share && strategy != "reconstruct") {
        return usage_error("--share applies to the reconstruct strategy only", observe);
      }
      if (strategy == "minimal-plan") strategy = "minimal";
      const Instance instance = load_instance(observe_path);
      ObservationOracle oracle(instance);
      TildeMatrix tilde;
      if (strategy == "reconstruct") {
        const ReconstructOptions options{observe_share};
        tilde = observe_exact ? to_double(reconstruct_tilde_exact(oracle, options).tilde)
                              : reconstruct_tilde(oracle, options).tilde;
      } else {
        const ObservationPlan plan = minimal_observation_plan(instance.n());
        tilde = observe_exact ? to_double(execute_plan_exact(oracle, plan))
                              : execute_plan(oracle, plan);
      }
      const json doc = {{"n", instance.n()},
                        {"strategy", strategy},
                        {"exact", observe_exact},
                        {"observations", oracle.query_count()},
                        {"c_min", instance.c_min()},
                        {"c_max", instance.c_max()},
                        {"tilde", matrix_rows(tilde.t)}};
      emit(global, out, dump(doc));
      return kExitOk;
    }

    if (*solve_cmd) {
      if (global.format == "csv") return usage_error("solve writes json", solve_cmd);
      const Algorithm algo = parse_algorithm(algo_name);
      const bool walks = algo == Algorithm::kPnn || algo == Algorithm::kPnnP2opt;
      if (!start_node_text.empty() && !walks) {
        return usage_error("--start-node applies to pnn and pnn+p2opt only", solve_cmd);
      }
      if (exchange_limit && algo != Algorithm::kPnnP2opt) {
        return usage_error("--exchange-limit applies to pnn+p2opt only", solve_cmd);
      }

      SolverConfig config;
      config.seed = global.seed;
      if (start_node_text == "random") {
        config.start_node.reset();
      } else if (!start_node_text.empty()) {
        try {
          std::size_t used = 0;
          config.start_node = std::stoi(start_node_text, &used);
          if (used != start_node_text.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          return usage_error("--start-node takes an index or 'random'", solve_cmd);
        }
      }
      if (exchange_limit) {
        if (*exchange_limit < 0) return usage_error("--exchange-limit must be >= 0", solve_cmd);
        config.exchange_limit = *exchange_limit;
      }

      std::optional<Instance> instance;
      SymmetricMatrix<double> matrix;
      std::optional<std::uint64_t> observations;
      if (mode == "tilde") {
        json doc;
        matrix = tilde_from_file(solve_path, doc);
      } else {
        instance = load_instance(solve_path);
        if (mode == "observe") {
          ObservationOracle oracle(*instance);
          matrix = reconstruct_tilde(oracle).tilde.t;
          observations = oracle.query_count();
        } else {
          matrix = instance->matrix();
        }
      }

      const SolveResult result = solve(algo, matrix, config);
      json doc = {{"algo", std::string(algorithm_name(algo))},
                  {"mode", mode},
                  {"n", matrix.size()},
                  {"seed", global.seed},
                  {"pairing", pairing_to_json(result.pairing)},
                  {"score", instance ? total_compatibility(*instance, result.pairing).value
                                     : result.score.value},
                  {"noc", result.noc},
                  {"exchanges", result.exchanges_used},
                  {"trace", result.trace}};
      if (walks) {
        doc["start_node"] = config.start_node ? json(*config.start_node) : json("random");
      }
      if (algo == Algorithm::kPnnP2opt) doc["exchange_limit"] = config.exchange_limit;
      if (observations) doc["observations"] = *observations;
      if (instance && instance->c_max() > instance->c_min()) {
        doc["p"] = performance_indicator(total_compatibility(*instance, result.pairing),
                                         instance->n(), instance->c_min(), instance->c_max())
                       .p;
      }
      emit(global, out, dump(doc));
      return kExitOk;
    }

    if (*graph_cmd) {
      if (global.format == "csv") return usage_error("graph writes json", graph_cmd);
      const Instance instance = load_instance(graph_path);
      const PairingTspGraph graph = build_graph(instance.matrix());
      json nodes = json::array();
      for (const TspNode& node : graph.nodes()) nodes.push_back(node_name(node));
      json edges = json::array();
      for (const TspEdge& e : graph.edges()) {
        edges.push_back({{"u", node_name(e.u)}, {"v", node_name(e.v)}, {"cost", e.cost}});
      }
      emit(global, out,
           dump({{"n", graph.n()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}}));
      return kExitOk;
    }

    if (*bench) {
      const Study study = parse_study(study_text);
      ExperimentSpec spec = default_spec(study, full);
      if (!spec_text.empty()) {
        const bool inline_json = spec_text.find_first_not_of(" \t\r\n") != std::string::npos &&
                                 spec_text[spec_text.find_first_not_of(" \t\r\n")] == '{';
        json doc;
        try {
          doc = json::parse(inline_json ? spec_text : read_file(spec_text));
        } catch (const json::parse_error& e) {
          throw ValidationError(std::string("malformed experiment spec: ") + e.what());
        }
        spec = parse_experiment_spec(doc, spec);
      }
      if (app.count("--seed") > 0) spec.master_seed = global.seed;
      if (timing) spec.timing = true;
      validate_spec(spec);

      const ExperimentReport report = run_study(study, spec);
      const bool as_json = global.format == "json";
      const std::string text = as_json ? dump(report_to_json(report)) : report_to_csv(report);
      GlobalOptions target = global;
      if (target.out.empty()) {
        target.out = "bench-" + std::string(study_name(study)) + "-" + timestamp() +
                     (as_json ? ".json" : ".csv");
      }
      emit(target, out, text);
      out << "wrote " << target.out << "\n";
      for (const SettingSummary& s : report.settings) {
        out << "n=" << s.n << " algo=" << s.algo << " mean_p=" << format_number(s.mean_p)
            << " std_p=" << format_number(s.std_p) << " mean_noc=" << format_number(s.mean_noc);
        if (s.mean_start_std) out << " mean_start_std=" << format_number(*s.mean_start_std);
        out << "\n";
      }
      return kExitOk;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace pairing

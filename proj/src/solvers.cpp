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

#include "pairing/solvers.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace pairing {
namespace {

using Rng = std::mt19937_64;

std::size_t uniform_index(Rng& rng, std::size_t count) {
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

// Uniform choice among the indices 1..size whose flag is still clear.
int pick_unvisited(Rng& rng, const std::vector<char>& visited) {
  std::vector<int> free;
  for (int i = 1; i < static_cast<int>(visited.size()); ++i) {
    if (visited[i] == 0) free.push_back(i);
  }
  if (free.empty()) throw InternalError("nearest-neighbour walk ran out of nodes");
  return free[uniform_index(rng, free.size())];
}

}  // namespace

SolveResult solve_random(const SymmetricMatrix<double>& m, std::uint64_t seed) {
  const int n = m.size();
  require_valid_element_count(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  Pairing pairing = Pairing::from_sequence(n, order);
  const double score = pairing_sum(m, pairing);
  return {std::move(pairing), {score}};
}

SolveResult solve_pnn(const SymmetricMatrix<double>& m, const SolverConfig& config) {
  const int n = m.size();
  require_valid_element_count(n);
  Rng rng(config.seed);
  int start = 0;
  if (config.start_node) {
    start = *config.start_node;
    if (start < 1 || start > n) {
      throw ValidationError("start node " + std::to_string(start) + " is outside 1.." +
                            std::to_string(n));
    }
  } else {
    start = static_cast<int>(uniform_index(rng, n)) + 1;
  }

  const int length = 5 * n / 2;
  std::vector<char> seen_first(n + 1, 0), seen_second(n + 1, 0), seen_third(n / 2 + 1, 0);
  Tour tour;
  tour.sequence.resize(length);
  tour.sequence[0] = {Layer::kFirst, start};
  tour.sequence[length - 1] = {Layer::kSecond, start};
  seen_first[start] = 1;
  seen_second[start] = 1;

  TspNode at = tour.sequence[0];
  std::vector<int> ties;
  // Step t writes position t (0-based) of the walk; t % 5 picks the move.
  for (int t = 1; t <= length - 2; ++t) {
    switch (t % 5) {
      case 1: {
        double best = 0.0;
        ties.clear();
        for (int j = 1; j <= n; ++j) {
          if (seen_first[j] != 0) continue;
          const double v = m(at.index, j);
          if (ties.empty() || v > best) {
            best = v;
            ties.assign(1, j);
          } else if (v == best) {
            ties.push_back(j);
          }
        }
        if (ties.empty()) throw InternalError("nearest-neighbour walk ran out of elements");
        const int next = ties.size() == 1 ? ties[0] : ties[uniform_index(rng, ties.size())];
        at = {Layer::kFirst, next};
        seen_first[next] = 1;
        break;
      }
      case 2:
        at = {Layer::kSecond, at.index};
        seen_second[at.index] = 1;
        break;
      case 3:
        at = {Layer::kThird, pick_unvisited(rng, seen_third)};
        seen_third[at.index] = 1;
        break;
      case 4:
        at = {Layer::kSecond, pick_unvisited(rng, seen_second)};
        seen_second[at.index] = 1;
        break;
      case 0:
        at = {Layer::kFirst, at.index};
        seen_first[at.index] = 1;
        break;
    }
    tour.sequence[t] = at;
  }

  const TourVerdict verdict = validate_tour(n, tour);
  if (!verdict)
    throw InternalError("nearest-neighbour walk produced a bad tour: " + verdict.reason);
  Pairing pairing = pairing_from_tour(tour);
  const double score = pairing_sum(m, pairing);
  SolveResult result{std::move(pairing), {score}};
  result.tour = std::move(tour);
  return result;
}

SolveResult solve_p2opt(const SymmetricMatrix<double>& m, const Pairing& initial,
                        const SolverConfig& config) {
  const int n = m.size();
  if (initial.n() != n) {
    throw ValidationError("initial pairing covers " + std::to_string(initial.n()) +
                          " elements but the matrix has " + std::to_string(n));
  }
  if (config.exchange_limit < 0) throw ValidationError("exchange limit must be non-negative");

  std::vector<int> s = initial.sequence();
  const int pairs = n / 2;
  std::uint64_t noc = 0;
  std::uint64_t exchanges = 0;
  std::vector<std::uint64_t> trace;
  std::vector<double> gains;

  while (static_cast<std::int64_t>(exchanges) < config.exchange_limit) {
    std::uint64_t checks = 0;
    bool exchanged = false;
    for (int i = 0; i < pairs - 1 && !exchanged; ++i) {
      for (int j = i + 1; j < pairs; ++j) {
        ++checks;
        const int p = s[2 * i], q = s[2 * i + 1], r = s[2 * j], t = s[2 * j + 1];
        const double a = m(p, q) + m(r, t);
        const double b = m(p, t) + m(r, q);
        const double c = m(p, r) + m(t, q);
        const double best = std::max({a, b, c});
        if (b == best && b > a) {
          std::swap(s[2 * i + 1], s[2 * j + 1]);
          gains.push_back(b - a);
          exchanged = true;
          break;
        }
        if (c == best && c > a) {
          s[2 * i + 1] = r;
          s[2 * j] = q;
          gains.push_back(c - a);
          exchanged = true;
          break;
        }
      }
    }
    noc += checks;
    trace.push_back(checks);
    if (!exchanged) break;
    ++exchanges;
  }

  Pairing pairing = Pairing::from_sequence(n, s);
  const double score = pairing_sum(m, pairing);
  SolveResult result{std::move(pairing), {score},          noc,
                     exchanges,          std::move(trace), std::move(gains)};
  return result;
}

SolveResult solve_pnn_p2opt(const SymmetricMatrix<double>& m, const SolverConfig& config) {
  SolveResult start = solve_pnn(m, config);
  SolveResult result = solve_p2opt(m, start.pairing, config);
  result.tour = std::move(start.tour);
  return result;
}

SolveResult solve_exact(const SymmetricMatrix<double>& m, EnumerationLimit limit) {
  ScoredPairing best = exact_best_pairing(m, limit);
  return {std::move(best.pairing), best.score};
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kPnn:
      return "pnn";
    case Algorithm::kPnnP2opt:
      return "pnn+p2opt";
    case Algorithm::kExact:
      return "exact";
  }
  throw InternalError("unknown algorithm");
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a :
       {Algorithm::kRandom, Algorithm::kPnn, Algorithm::kPnnP2opt, Algorithm::kExact}) {
    if (algorithm_name(a) == name) return a;
  }
  throw ValidationError("unknown algorithm '" + std::string(name) +
                        "' (expected random, pnn, pnn+p2opt or exact)");
}

SolveResult solve(Algorithm algorithm, const SymmetricMatrix<double>& m,
                  const SolverConfig& config) {
  switch (algorithm) {
    case Algorithm::kRandom:
      return solve_random(m, config.seed);
    case Algorithm::kPnn:
      return solve_pnn(m, config);
    case Algorithm::kPnnP2opt:
      return solve_pnn_p2opt(m, config);
    case Algorithm::kExact:
      return solve_exact(m);
  }
  throw InternalError("unknown algorithm");
}

}  // namespace pairing

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

// Solvers over a (possibly reconstructed) compatibility matrix.

#ifndef PAIRING_SOLVERS_HPP_
#define PAIRING_SOLVERS_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pairing/core.hpp"
#include "pairing/pairing_tsp.hpp"

namespace pairing {

inline constexpr std::int64_t kUnlimitedExchanges = std::numeric_limits<std::int64_t>::max();
inline constexpr std::int64_t kDefaultExchangeLimit = 600;

struct SolverConfig {
  std::uint64_t seed = 0;
  // Layer-1 start of the nearest-neighbour walk; nullopt draws it from the RNG.
  std::optional<int> start_node = 1;
  std::int64_t exchange_limit = kDefaultExchangeLimit;
};

struct SolveResult {
  Pairing pairing;
  PairingScore score;
  std::uint64_t noc = 0;  // pair-of-pairs evaluations
  std::uint64_t exchanges_used = 0;
  std::vector<std::uint64_t> trace;  // checks per exchange loop
  std::vector<double> gains;         // score increase of each exchange
  std::optional<Tour> tour;          // set by the nearest-neighbour walk
};

// Uniform random pairing: shuffle 1..N and pair adjacent positions.
SolveResult solve_random(const SymmetricMatrix<double>& m, std::uint64_t seed);

// Pairing nearest neighbour. Walks the three-layer graph in the fixed
// L1 -> L1 -> L2 -> L3 -> L2 -> L1 rhythm: the layer-1 hop goes to the
// unvisited element of highest compatibility (ties uniformly at random),
// every other hop picks uniformly among unvisited nodes. The last layer-2
// node is reserved for the start's twin so the walk closes.
//
// The random layer-2 pick decides which element opens the next pair, so it
// does shape the result. Throws ValidationError for a bad start node.
SolveResult solve_pnn(const SymmetricMatrix<double>& m, const SolverConfig& config);

// Pairing 2-opt from `initial`. Pairs of pairs are scanned round-robin in
// the order of the working array (initially canonical). For pairs
// {p,q},{r,s} the candidates are
//   a = m(p,q) + m(r,s),  b = m(p,s) + m(r,q),  c = m(p,r) + m(s,q)
// and the first of b, c that attains max(a, b, c) while strictly beating a
// is applied, after which the scan restarts. Stops after a clean scan or
// once exchange_limit exchanges were made. Every evaluation counts as one
// check.
SolveResult solve_p2opt(const SymmetricMatrix<double>& m, const Pairing& initial,
                        const SolverConfig& config);

// PNN followed by P2-opt; noc and the trace come from the P2-opt stage.
SolveResult solve_pnn_p2opt(const SymmetricMatrix<double>& m, const SolverConfig& config);

// Enumeration. Small N only (see EnumerationLimit).
SolveResult solve_exact(const SymmetricMatrix<double>& m, EnumerationLimit limit = {});

enum class Algorithm { kRandom, kPnn, kPnnP2opt, kExact };

// "random", "pnn", "pnn+p2opt", "exact".
std::string_view algorithm_name(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

SolveResult solve(Algorithm algorithm, const SymmetricMatrix<double>& m,
                  const SolverConfig& config);

}  // namespace pairing

#endif  // PAIRING_SOLVERS_HPP_

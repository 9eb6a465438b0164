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

// Recovering compatibilities from sum-only observations.
//
// Only pairing totals are observable, so the true matrix c is not
// identifiable. What is identifiable is the "tilde" matrix
//
//   t(i, j) = 0                                          if i == 1 or j == 1
//   t(i, j) = c(i, j) - c(1, i) - c(1, j) + 2/(N-2) * sum_{k>=2} c(1, k)
//
// which gives every pairing the same total as c. Its (N-1)(N-2)/2 entries
// t(a, b), 2 <= a < b <= N, are the free coordinates.
//
// The exchange rule [i,j,k,l] = (m(i,k) + m(j,l)) - (m(i,j) + m(k,l)) is
// the change in total when pairs {i,j},{k,l} are rewired into {i,k},{j,l};
// two observations that agree elsewhere measure it. Reconstruction measures
//
//   horizontal  [1,j,3,2] = t(2,j) - t(2,3)        4 <= j <= N
//   vertical    [1,i,2,j] = t(i,j) - t(2,j)        3 <= i < j, 4 <= j <= N
//   anchor      total of {{1,2},{3,4},...,{N-1,N}}
//
// which pins every t(a, b) as x + offset with x = t(2,3), and the anchor
// then solves for x.

#ifndef PAIRING_OBSERVATION_HPP_
#define PAIRING_OBSERVATION_HPP_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "pairing/core.hpp"
#include "pairing/oracle.hpp"

namespace pairing {

using Rational = boost::multiprecision::cpp_rational;

// Throws ValidationError unless i, j, k, l are distinct and inside 1..n.
void require_distinct_indices(int n, int i, int j, int k, int l);

template <typename T>
T exchange_rule_value(int i, int j, int k, int l, const SymmetricMatrix<T>& m) {
  require_distinct_indices(m.size(), i, j, k, l);
  return (m(i, k) + m(j, l)) - (m(i, j) + m(k, l));
}

struct ExchangeRule {
  int i, j, k, l;
  double value;
};

// The two pairings that measure [i,j,k,l]: `before` holds {i,j},{k,l},
// `after` holds {i,k},{j,l}, and both pair the remaining elements in
// ascending adjacent order.
struct RulePairings {
  Pairing before;
  Pairing after;
};
RulePairings rule_pairings(int n, int i, int j, int k, int l);

// observe(after) - observe(before). With a memo, pairings seen before are
// not resubmitted.
double measure_exchange_rule(ObservationOracle& oracle, int i, int j, int k, int l,
                             ObservationMemo* memo = nullptr);

template <typename T>
struct TildeMatrixT {
  int n = 0;
  SymmetricMatrix<T> t;

  T total(const Pairing& pairing) const { return pairing_sum(t, pairing); }
};

using TildeMatrix = TildeMatrixT<double>;
using ExactTildeMatrix = TildeMatrixT<Rational>;

TildeMatrix to_double(const ExactTildeMatrix& exact);

// Closed form of the tilde matrix from a known matrix. Used as a reference
// by tests; the observation pipeline never calls it.
ExactTildeMatrix tilde_from_matrix(const SymmetricMatrix<Rational>& c);

// Measured values of the reconstruction protocol.
template <typename T>
struct RuleValues {
  int n = 0;
  std::vector<T> horizontal;    // horizontal[j] = [1,j,3,2], j in 4..n
  SymmetricMatrix<T> vertical;  // vertical(i, j) = [1,i,2,j], 3 <= i < j
  T anchor{};

  explicit RuleValues(int n_in) : n(n_in), horizontal(n_in + 1), vertical(n_in) {}
};

template <typename T>
TildeMatrixT<T> tilde_from_rule_values(const RuleValues<T>& values);

// 2(N-3) + (N-2)(N-3) + 1: two observations per exchange rule plus the anchor.
std::uint64_t observation_budget(int n);

struct ReconstructOptions {
  // Reuse pairings that several rules have in common. Off by default so the
  // query count equals observation_budget(n) exactly.
  bool share_observations = false;
};

template <typename T>
struct ReconstructionT {
  TildeMatrixT<T> tilde;
  std::uint64_t observations = 0;
};

using Reconstruction = ReconstructionT<double>;
using ExactReconstruction = ReconstructionT<Rational>;

// Throws ValidationError for n odd or below 4.
Reconstruction reconstruct_tilde(ObservationOracle& oracle, ReconstructOptions options = {});

// Same protocol in rational arithmetic. Observed doubles are converted
// exactly, so integer instances reconstruct with zero error.
ExactReconstruction reconstruct_tilde_exact(ObservationOracle& oracle,
                                            ReconstructOptions options = {});

// ---------------------------------------------------------------------------
// Minimal observation plans.

// (N-1)(N-2)/2.
std::uint64_t minimal_observation_count(int n);

// Index of t(a, b), 2 <= a < b <= n, in row-major order over the free
// coordinates.
std::size_t free_coordinate_index(int n, int a, int b);

// Free coordinates touched by the pairing (every pair not containing 1).
std::vector<std::size_t> observation_vector(const Pairing& pairing);

enum class DerivedValue { kHorizontalRule, kVerticalRule, kAnchor };

struct PlanTerm {
  std::size_t observation;  // index into ObservationPlan::pairings
  Rational coefficient;
};

// One protocol value written as a combination of plan observations.
// kHorizontalRule uses j; kVerticalRule uses (i, j); kAnchor uses neither.
struct Derivation {
  DerivedValue kind;
  int i = 0;
  int j = 0;
  std::vector<PlanTerm> terms;
};

struct ObservationPlan {
  int n = 0;
  std::vector<Pairing> pairings;
  std::vector<Derivation> derivations;
};

// Exactly (N-1)(N-2)/2 pairings with linearly independent observation
// vectors, picked greedily from the reconstruction protocol's pairings by
// exact rational elimination. Throws InternalError if the rank comes up short.
ObservationPlan minimal_observation_plan(int n);

TildeMatrix execute_plan(ObservationOracle& oracle, const ObservationPlan& plan);
ExactTildeMatrix execute_plan_exact(ObservationOracle& oracle, const ObservationPlan& plan);

}  // namespace pairing

#endif  // PAIRING_OBSERVATION_HPP_

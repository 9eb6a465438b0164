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

#include "pairing/observation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "pairing/oracle.hpp"
#include "test_support.hpp"

namespace pairing {
namespace {

using boost::multiprecision::cpp_int;

SymmetricMatrix<Rational> to_rational(const SymmetricMatrix<double>& m) {
  SymmetricMatrix<Rational> r(m.size());
  for (int i = 1; i <= m.size(); ++i) {
    for (int j = i + 1; j <= m.size(); ++j) r.set(i, j, Rational(m(i, j)));
  }
  return r;
}

// Written out entry by entry, independently of the library's closed form.
SymmetricMatrix<Rational> reference_tilde(const SymmetricMatrix<double>& c) {
  const int n = c.size();
  Rational row_one = 0;
  for (int k = 2; k <= n; ++k) row_one += Rational(c(1, k));
  const Rational shift = Rational(2, n - 2) * row_one;
  SymmetricMatrix<Rational> t(n);
  for (int i = 2; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      t.set(i, j, Rational(c(i, j)) - Rational(c(1, i)) - Rational(c(1, j)) + shift);
    }
  }
  return t;
}

Rational rational_sum(const SymmetricMatrix<Rational>& m, const Pairing& p) {
  Rational total = 0;
  for (const Pair& q : p.pairs()) total += m(q.lo, q.hi);
  return total;
}

std::vector<int> random_quadruple(int n, std::mt19937_64& rng) {
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(4);
  return order;
}

TEST(ExchangeRuleTest, ConstantMatrixIsZero) {
  const SymmetricMatrix<double> m(6, 42.0);
  EXPECT_EQ(exchange_rule_value(1, 2, 3, 4, m), 0);
  EXPECT_EQ(exchange_rule_value(6, 3, 1, 5, m), 0);
}

TEST(ExchangeRuleTest, PlugIn) {
  SymmetricMatrix<double> m(4);
  m.set(1, 3, 1);
  m.set(2, 4, 1);
  EXPECT_EQ(exchange_rule_value(1, 2, 3, 4, m), 2);
}

TEST(ExchangeRuleTest, Antisymmetry) {
  const SymmetricMatrix<double> m = testing::random_integer_matrix(8, 7);
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto q = random_quadruple(8, rng);
    EXPECT_EQ(exchange_rule_value(q[0], q[1], q[2], q[3], m),
              -exchange_rule_value(q[0], q[2], q[1], q[3], m));
  }
}

TEST(ExchangeRuleTest, RejectsRepeatedOrOutOfRange) {
  const SymmetricMatrix<double> m(6);
  EXPECT_THROW(exchange_rule_value(1, 2, 2, 4, m), ValidationError);
  EXPECT_THROW(exchange_rule_value(1, 2, 3, 7, m), ValidationError);
}

TEST(ExchangeRuleTest, SameOnTildeAndOriginal) {
  const SymmetricMatrix<double> c = testing::random_integer_matrix(8, 9);
  const SymmetricMatrix<Rational> t = reference_tilde(c);
  const SymmetricMatrix<Rational> cr = to_rational(c);
  std::mt19937_64 rng(10);
  for (int k = 0; k < 50; ++k) {
    const auto q = random_quadruple(8, rng);
    EXPECT_EQ(exchange_rule_value(q[0], q[1], q[2], q[3], t),
              exchange_rule_value(q[0], q[1], q[2], q[3], cr));
  }
}

TEST(RulePairingsTest, CanonicalCompletion) {
  const RulePairings rp = rule_pairings(8, 1, 2, 3, 4);
  EXPECT_EQ(rp.before, Pairing(8, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}));
  EXPECT_EQ(rp.after, Pairing(8, {{1, 3}, {2, 4}, {5, 6}, {7, 8}}));
  const RulePairings other = rule_pairings(8, 1, 6, 3, 2);
  EXPECT_EQ(other.before, Pairing(8, {{1, 6}, {2, 3}, {4, 5}, {7, 8}}));
  EXPECT_EQ(other.after, Pairing(8, {{1, 3}, {2, 6}, {4, 5}, {7, 8}}));
}

TEST(MeasureExchangeRuleTest, TwoObservationsDifference) {
  const Instance inst = testing::random_integer_instance(8, 12);
  ObservationOracle oracle(inst, true);
  const double v = measure_exchange_rule(oracle, 1, 2, 3, 4);
  EXPECT_EQ(v, (inst(1, 3) + inst(2, 4)) - (inst(1, 2) + inst(3, 4)));
  const auto log = oracle.query_log();
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].value + log[1].value,
            2 * (inst(5, 6) + inst(7, 8)) + inst(1, 2) + inst(3, 4) + inst(1, 3) + inst(2, 4));
}

TEST(MeasureExchangeRuleTest, ConstantIsZero) {
  ObservationOracle oracle(testing::constant_instance(6, 17));
  EXPECT_EQ(measure_exchange_rule(oracle, 5, 2, 6, 1), 0);
}

TEST(MeasureExchangeRuleTest, MatchesHiddenMatrix) {
  ObservationOracle oracle(testing::random_integer_instance(6, 13));
  const SymmetricMatrix<double>& hidden = OracleBackdoor::hidden(oracle).matrix();
  std::mt19937_64 rng(14);
  for (int t = 0; t < 20; ++t) {
    const auto q = random_quadruple(6, rng);
    EXPECT_EQ(measure_exchange_rule(oracle, q[0], q[1], q[2], q[3]),
              exchange_rule_value(q[0], q[1], q[2], q[3], hidden));
  }
  EXPECT_EQ(oracle.query_count(), 40u);
}

TEST(MeasureExchangeRuleTest, MemoAvoidsResubmission) {
  ObservationOracle oracle(testing::random_integer_instance(6, 15));
  ObservationMemo memo;
  const double a = measure_exchange_rule(oracle, 1, 2, 3, 4, &memo);
  EXPECT_EQ(measure_exchange_rule(oracle, 1, 2, 3, 4, &memo), a);
  EXPECT_EQ(oracle.query_count(), 2u);
}

TEST(TildeTest, LibraryClosedFormMatchesReference) {
  const SymmetricMatrix<double> c = testing::random_integer_matrix(8, 16);
  EXPECT_EQ(tilde_from_matrix(to_rational(c)).t, reference_tilde(c));
}

TEST(ReconstructTest, BudgetValues) {
  EXPECT_EQ(observation_budget(4), 5u);
  EXPECT_EQ(observation_budget(6), 19u);
  EXPECT_EQ(observation_budget(10), 71u);
  EXPECT_EQ(observation_budget(50), 2351u);
}

TEST(ReconstructTest, SixElementsUseNineteenObservations) {
  ObservationOracle oracle(testing::random_integer_instance(6, 17));
  const Reconstruction r = reconstruct_tilde(oracle);
  EXPECT_EQ(r.observations, 19u);
  EXPECT_EQ(oracle.query_count(), 19u);
}

TEST(ReconstructTest, SharingStaysWithinBudget) {
  for (int n : {4, 6, 10, 20}) {
    ObservationOracle oracle(testing::random_integer_instance(n, 18));
    const Reconstruction shared = reconstruct_tilde(oracle, {.share_observations = true});
    EXPECT_LE(shared.observations, observation_budget(n));
    EXPECT_EQ(shared.observations, oracle.query_count());
    ObservationOracle again(testing::random_integer_instance(n, 18));
    const Reconstruction plain = reconstruct_tilde(again);
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        EXPECT_NEAR(shared.tilde.t(i, j), plain.tilde.t(i, j), 1e-6);
      }
    }
  }
}

TEST(ReconstructTest, ConstantMatrix) {
  ObservationOracle oracle(testing::constant_instance(8, 250), true);
  const Reconstruction r = reconstruct_tilde(oracle);
  EXPECT_EQ(oracle.query_log().back().value, 1000);
  for (const Pairing& p : testing::pairings_by_permutation(8)) {
    EXPECT_NEAR(r.tilde.total(p), 1000, 1e-9);
  }
}

TEST(ReconstructTest, SumPreservedOnEveryPairing) {
  for (int n : {4, 6, 8, 10}) {
    const auto pairings = enumerate_pairings(n);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Instance inst = testing::random_integer_instance(n, 1000 * n + seed);
      ObservationOracle oracle(inst);
      const Reconstruction r = reconstruct_tilde(oracle);
      ASSERT_EQ(r.observations, observation_budget(n));
      const double tol = 1e-6 * (n / 2) * inst.c_max();
      double worst = 0;
      for (const Pairing& p : pairings) {
        worst = std::max(worst,
                         std::abs(r.tilde.total(p) - testing::brute_force_total(inst.matrix(), p)));
      }
      EXPECT_LE(worst, tol) << "n=" << n << " seed=" << seed;
    }
  }
}

TEST(ReconstructTest, ExactModeIsExact) {
  for (int n : {4, 6, 8, 10}) {
    const Instance inst = testing::random_integer_instance(n, 77 + n);
    ObservationOracle oracle(inst);
    const ExactReconstruction r = reconstruct_tilde_exact(oracle);
    EXPECT_EQ(r.tilde.t, reference_tilde(inst.matrix()));
    const SymmetricMatrix<Rational> c = to_rational(inst.matrix());
    for (const Pairing& p : enumerate_pairings(n)) EXPECT_EQ(r.tilde.total(p), rational_sum(c, p));
  }
}

// Exactness needs observed sums that doubles represent exactly.
TEST(ReconstructTest, ExactModeHandlesDyadicFractions) {
  SymmetricMatrix<double> m = testing::random_integer_matrix(6, 19);
  m.set(2, 5, 0.5);
  m.set(1, 4, 0.125);
  const Instance inst(m, 0, 10000);
  ObservationOracle oracle(inst);
  EXPECT_EQ(reconstruct_tilde_exact(oracle).tilde.t, reference_tilde(m));
}

TEST(ReconstructTest, FirstRowIsExactlyZero) {
  ObservationOracle oracle(testing::random_integer_instance(10, 20));
  const Reconstruction r = reconstruct_tilde(oracle);
  for (int j = 1; j <= 10; ++j) {
    EXPECT_EQ(r.tilde.t(1, j), 0.0);
    EXPECT_EQ(r.tilde.t(j, 1), 0.0);
  }
}

TEST(ReconstructTest, FloatMatchesReferenceTilde) {
  const Instance inst = testing::random_integer_instance(50, 21);
  ObservationOracle oracle(inst);
  const Reconstruction r = reconstruct_tilde(oracle);
  EXPECT_EQ(r.observations, 2351u);
  const SymmetricMatrix<Rational> ref = reference_tilde(inst.matrix());
  for (int i = 2; i <= 50; ++i) {
    for (int j = i + 1; j <= 50; ++j) {
      EXPECT_NEAR(r.tilde.t(i, j), static_cast<double>(ref(i, j)), 1e-6);
    }
  }
}

TEST(ReconstructTest, RejectsBadSizes) {
  EXPECT_THROW(minimal_observation_plan(5), ValidationError);
  EXPECT_THROW(minimal_observation_plan(2), ValidationError);
}

// Indicator row over t(a, b), 2 <= a < b <= n, numbered independently.
std::vector<cpp_int> indicator(const Pairing& p) {
  const int n = p.n();
  std::vector<cpp_int> row;
  for (int a = 2; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) row.push_back(p.contains(a, b) ? 1 : 0);
  }
  return row;
}

TEST(MinimalPlanTest, CountsAndFullRank) {
  const std::vector<std::pair<int, std::size_t>> expected = {{4, 3}, {6, 10}, {8, 21}, {10, 36}};
  for (const auto& [n, count] : expected) {
    EXPECT_EQ(minimal_observation_count(n), count);
    const ObservationPlan plan = minimal_observation_plan(n);
    ASSERT_EQ(plan.pairings.size(), count);
    EXPECT_EQ(std::set<Pairing>(plan.pairings.begin(), plan.pairings.end()).size(), count);
    std::vector<std::vector<cpp_int>> rows;
    for (const Pairing& p : plan.pairings) rows.push_back(indicator(p));
    EXPECT_EQ(testing::bareiss_rank(rows), count) << "n=" << n;
  }
}

TEST(MinimalPlanTest, ObservationVectorMatchesIndicator) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const Pairing p = testing::random_pairing(10, rng);
    const auto ones = observation_vector(p);
    const auto row = indicator(p);
    for (std::size_t k = 0; k < row.size(); ++k) {
      const bool listed = std::find(ones.begin(), ones.end(), k) != ones.end();
      EXPECT_EQ(listed, row[k] == 1);
    }
  }
  EXPECT_EQ(free_coordinate_index(6, 2, 3), 0u);
  EXPECT_EQ(free_coordinate_index(6, 5, 6), 9u);
}

TEST(MinimalPlanTest, DerivationsReproduceProtocolValues) {
  for (int n : {4, 6, 8}) {
    const ObservationPlan plan = minimal_observation_plan(n);
    const SymmetricMatrix<Rational> c = to_rational(testing::random_integer_matrix(n, 24 + n));
    std::vector<Rational> observed;
    for (const Pairing& p : plan.pairings) observed.push_back(rational_sum(c, p));
    std::size_t horizontal = 0, vertical = 0, anchors = 0;
    for (const Derivation& d : plan.derivations) {
      Rational value = 0;
      for (const PlanTerm& term : d.terms)
        value += term.coefficient * observed.at(term.observation);
      switch (d.kind) {
        case DerivedValue::kHorizontalRule:
          ++horizontal;
          EXPECT_EQ(value, exchange_rule_value(1, d.j, 3, 2, c));
          break;
        case DerivedValue::kVerticalRule:
          ++vertical;
          EXPECT_EQ(value, exchange_rule_value(1, d.i, 2, d.j, c));
          break;
        case DerivedValue::kAnchor: {
          ++anchors;
          std::vector<Pair> adjacent;
          for (int k = 1; k < n; k += 2) adjacent.push_back({k, k + 1});
          EXPECT_EQ(value, rational_sum(c, Pairing(n, adjacent)));
          break;
        }
      }
    }
    EXPECT_EQ(horizontal, static_cast<std::size_t>(n - 3));
    EXPECT_EQ(vertical, static_cast<std::size_t>((n - 2) * (n - 3) / 2));
    EXPECT_EQ(anchors, 1u);
  }
}

TEST(MinimalPlanTest, ExecuteUsesExactlyThePlan) {
  for (int n : {4, 6, 8, 10}) {
    const ObservationPlan plan = minimal_observation_plan(n);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Instance inst = testing::random_integer_instance(n, 500 + seed);
      ObservationOracle oracle(inst);
      const TildeMatrix t = execute_plan(oracle, plan);
      EXPECT_EQ(oracle.query_count(), minimal_observation_count(n));
      for (const Pairing& p : enumerate_pairings(n)) {
        EXPECT_NEAR(t.total(p), testing::brute_force_total(inst.matrix(), p),
                    1e-6 * (n / 2) * inst.c_max());
      }
      ObservationOracle exact_oracle(inst);
      EXPECT_EQ(execute_plan_exact(exact_oracle, plan).t, reference_tilde(inst.matrix()));
      EXPECT_EQ(exact_oracle.query_count(), minimal_observation_count(n));
    }
  }
}

TEST(MinimalPlanTest, ConstantFourElements) {
  ObservationOracle oracle(testing::constant_instance(4, 3));
  const TildeMatrix t = execute_plan(oracle, minimal_observation_plan(4));
  EXPECT_EQ(oracle.query_count(), 3u);
  for (const Pairing& p : enumerate_pairings(4)) EXPECT_NEAR(t.total(p), 6, 1e-12);
}

TEST(MinimalPlanTest, RejectsMismatchedOracle) {
  ObservationOracle oracle(testing::constant_instance(6, 3));
  EXPECT_THROW(execute_plan(oracle, minimal_observation_plan(4)), ValidationError);
  EXPECT_EQ(oracle.query_count(), 0u);
}

}  // namespace
}  // namespace pairing

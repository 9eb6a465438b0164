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

#include "pairing/pairing_tsp.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "test_support.hpp"

namespace pairing {
namespace {

TspNode l1(int i) { return {Layer::kFirst, i}; }
TspNode l2(int i) { return {Layer::kSecond, i}; }
TspNode l3(int k) { return {Layer::kThird, k}; }

TEST(GraphTest, SixElementShape) {
  const PairingTspGraph g(testing::random_integer_matrix(6, 1));
  EXPECT_EQ(g.node_count(), 15);
  EXPECT_EQ(g.nodes().size(), 15u);
  EXPECT_EQ(g.edges().size(), 39u);
  for (int n : {4, 8, 10}) {
    EXPECT_EQ(build_graph(SymmetricMatrix<double>(n)).edges().size(),
              static_cast<std::size_t>(n * (n - 1) / 2 + n + n * n / 2));
  }
}

TEST(GraphTest, CostsAndEdges) {
  const SymmetricMatrix<double> m = testing::random_integer_matrix(4, 2);
  const PairingTspGraph g(m);
  EXPECT_EQ(g.cost(l1(1), l1(2)), -m(1, 2));
  EXPECT_EQ(g.cost(l1(3), l2(3)), 0);
  EXPECT_EQ(g.cost(l2(4), l3(1)), 0);
  EXPECT_FALSE(g.has_edge(l1(1), l2(2)));
  EXPECT_FALSE(g.has_edge(l1(1), l3(1)));
  EXPECT_FALSE(g.has_edge(l2(1), l2(2)));
  EXPECT_FALSE(g.has_edge(l3(1), l3(2)));
  EXPECT_THROW(g.cost(l1(1), l3(1)), ValidationError);
  EXPECT_THROW(PairingTspGraph(SymmetricMatrix<double>(5)), ValidationError);
}

TEST(GraphTest, EdgeListAgreesWithFlatAdjacency) {
  const testing::FlatGraph flat{6};
  const PairingTspGraph g(SymmetricMatrix<double>(6));
  std::set<std::pair<TspNode, TspNode>> listed;
  for (const TspEdge& e : g.edges()) listed.insert(std::minmax(e.u, e.v));
  std::size_t expected = 0;
  for (int u = 0; u < flat.size(); ++u) {
    for (int v = u + 1; v < flat.size(); ++v) {
      if (!flat.adjacent(u, v)) continue;
      ++expected;
      EXPECT_TRUE(listed.count(std::minmax(flat.node(u), flat.node(v))));
      EXPECT_TRUE(g.has_edge(flat.node(u), flat.node(v)));
    }
  }
  EXPECT_EQ(listed.size(), expected);
}

TEST(NodeNameTest, Format) {
  EXPECT_EQ(node_name(l1(3)), "L1:3");
  EXPECT_EQ(node_name(l2(10)), "L2:10");
  EXPECT_EQ(node_name(l3(2)), "L3:2");
}

TEST(ValidateTourTest, CanonicalTourFromPairing) {
  const PairingTspGraph g(SymmetricMatrix<double>(4));
  const Tour t = tour_from_pairing(g, Pairing(4, {{1, 2}, {3, 4}}));
  EXPECT_EQ(t.sequence, (std::vector<TspNode>{l1(1), l1(2), l2(2), l3(1), l2(3), l1(3), l1(4),
                                              l2(4), l3(2), l2(1)}));
  EXPECT_TRUE(validate_tour(g, t).valid());
}

TEST(ValidateTourTest, ThreeFirstLayerVisits) {
  const Tour t{{l1(1), l1(2), l1(3), l2(3), l3(1), l2(2), l1(4), l2(4), l3(2), l2(1)}};
  const TourVerdict v = validate_tour(4, t);
  EXPECT_EQ(v.violation, TourViolation::kThreeFirstLayer);
  EXPECT_EQ(v.reason, "three consecutive first-layer visits");
  EXPECT_EQ(v.position, 0u);
}

TEST(ValidateTourTest, FirstToThirdHop) {
  const Tour t{{l1(1), l3(1), l2(2), l1(2), l1(3), l2(3), l3(2), l2(4), l1(4), l2(1)}};
  const TourVerdict v = validate_tour(4, t);
  EXPECT_EQ(v.violation, TourViolation::kNoSuchEdge);
  EXPECT_EQ(v.reason.rfind("no such edge", 0), 0u);
}

TEST(ValidateTourTest, ThirdSecondThirdFragment) {
  const Tour t{{l3(1), l2(1), l3(2), l2(2), l1(2), l1(1), l1(3), l1(4), l2(4), l2(3)}};
  const TourVerdict v = validate_tour(4, t);
  EXPECT_EQ(v.violation, TourViolation::kThirdSecondThird);
  EXPECT_EQ(v.position, 0u);
}

TEST(ValidateTourTest, StructuralErrors) {
  Tour t = tour_from_pairing(build_graph(SymmetricMatrix<double>(4)), Pairing(4, {{1, 2}, {3, 4}}));
  Tour shorter = t;
  shorter.sequence.pop_back();
  EXPECT_EQ(validate_tour(4, shorter).violation, TourViolation::kWrongLength);
  Tour repeated = t;
  repeated.sequence[9] = l2(2);
  EXPECT_EQ(validate_tour(4, repeated).violation, TourViolation::kRepeatedNode);
  Tour outside = t;
  outside.sequence[3] = l3(3);
  EXPECT_EQ(validate_tour(4, outside).violation, TourViolation::kNodeOutOfRange);
}

TEST(TourTest, NormalizationIgnoresRotationAndDirection) {
  const PairingTspGraph g(SymmetricMatrix<double>(6));
  const Tour t = tour_from_pairing(g, Pairing(6, {{1, 4}, {2, 5}, {3, 6}}));
  Tour rotated = t;
  std::rotate(rotated.sequence.begin(), rotated.sequence.begin() + 7, rotated.sequence.end());
  Tour reversed = t;
  std::reverse(reversed.sequence.begin(), reversed.sequence.end());
  EXPECT_EQ(rotated, t);
  EXPECT_EQ(reversed, t);
  EXPECT_EQ(reversed.normalized().sequence.front(), l1(1));
  EXPECT_EQ(rotated.normalized().sequence, t.normalized().sequence);
  const Tour other = tour_from_pairing(g, Pairing(6, {{1, 2}, {3, 4}, {5, 6}}));
  EXPECT_FALSE(other == t);
}

TEST(TourTest, PairingFromFourElementTour) {
  const Tour t{{l1(1), l1(2), l2(2), l3(2), l2(3), l1(3), l1(4), l2(4), l3(1), l2(1)}};
  EXPECT_EQ(pairing_from_tour(t), Pairing(4, {{1, 2}, {3, 4}}));
}

TEST(TourTest, RoundTripOnAllPairings) {
  for (int n : {4, 6, 8}) {
    const SymmetricMatrix<double> m = testing::random_integer_matrix(n, 30 + n);
    const PairingTspGraph g(m);
    for (const Pairing& p : testing::pairings_by_permutation(n)) {
      const Tour t = tour_from_pairing(g, p);
      ASSERT_TRUE(validate_tour(g, t).valid()) << p.to_string();
      EXPECT_EQ(pairing_from_tour(t), p);
      EXPECT_EQ(tour_cost(g, t), -testing::brute_force_total(m, p));
    }
  }
}

TEST(TourTest, CostIsNegatedScoreOnRandomEightElementPairings) {
  const SymmetricMatrix<double> m = testing::random_integer_matrix(8, 40);
  const PairingTspGraph g(m);
  std::mt19937_64 rng(41);
  for (int k = 0; k < 30; ++k) {
    const Pairing p = testing::random_pairing(8, rng);
    EXPECT_EQ(tour_cost(g, tour_from_pairing(g, p)), -testing::brute_force_total(m, p));
  }
}

TEST(TourTest, InvalidTourRejected) {
  const Tour bad{{l1(1), l1(2), l1(3), l2(3), l3(1), l2(2), l1(4), l2(4), l3(2), l2(1)}};
  EXPECT_THROW(pairing_from_tour(bad), ValidationError);
  EXPECT_THROW(tour_cost(build_graph(SymmetricMatrix<double>(4)), bad), ValidationError);
}

// Every Hamiltonian cycle is enumerated from L1:1 with the flat adjacency.
TEST(BruteForceTourTest, MinimumTourCostIsMinusBestScore) {
  for (int n : {4, 6}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SymmetricMatrix<double> m = testing::random_integer_matrix(n, 50 + seed);
      const std::vector<Tour> cycles = testing::hamiltonian_cycles(n);
      ASSERT_FALSE(cycles.empty());

      const PairingTspGraph g(m);
      double min_cost = std::numeric_limits<double>::infinity();
      std::set<Pairing> reached;
      for (const Tour& t : cycles) {
        ASSERT_TRUE(validate_tour(g, t).valid());
        const double cost = testing::reference_tour_cost(m, t);
        const Pairing p = pairing_from_tour(t);
        EXPECT_EQ(tour_cost(g, t), cost);
        EXPECT_EQ(cost, -testing::brute_force_total(m, p));
        reached.insert(p);
        min_cost = std::min(min_cost, cost);
      }
      EXPECT_EQ(reached.size(), pairing_count(n));
      double best = -std::numeric_limits<double>::infinity();
      for (const Pairing& p : testing::pairings_by_permutation(n)) {
        best = std::max(best, testing::brute_force_total(m, p));
      }
      EXPECT_EQ(min_cost, -best);
    }
  }
}

}  // namespace
}  // namespace pairing

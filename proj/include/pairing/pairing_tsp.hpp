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

// The pairing problem as a travelling-salesman problem on a three-layer
// graph. Layer 1 holds the N elements and is complete, with edge cost
// -c(i, j). Layer 2 mirrors layer 1 and links node i only to its layer-1
// twin. Layer 3 has N/2 nodes joined to every layer-2 node. All edges
// outside layer 1 cost 0.
//
// In any Hamiltonian cycle every layer-2 node spends one edge on its twin
// and one on layer 3, so layer-1 nodes appear in consecutive couples and
// those couples form a pairing whose total is minus the tour cost.

#ifndef PAIRING_PAIRING_TSP_HPP_
#define PAIRING_PAIRING_TSP_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pairing/core.hpp"

namespace pairing {

enum class Layer : std::uint8_t { kFirst = 1, kSecond = 2, kThird = 3 };

struct TspNode {
  Layer layer;
  int index;  // 1-based within its layer

  auto operator<=>(const TspNode&) const = default;
};

// "L1:i", "L2:i", "L3:k".
std::string node_name(const TspNode& node);

struct TspEdge {
  TspNode u;
  TspNode v;
  double cost;
};

// Edge structure depends only on n; costs are not consulted.
bool tsp_edge_exists(int n, const TspNode& u, const TspNode& v);

class PairingTspGraph {
 public:
  // Throws ValidationError for odd n or n < 4.
  explicit PairingTspGraph(SymmetricMatrix<double> compatibility);

  int n() const { return compatibility_.size(); }
  int node_count() const { return 5 * n() / 2; }

  std::vector<TspNode> nodes() const;
  bool has_edge(const TspNode& u, const TspNode& v) const { return tsp_edge_exists(n(), u, v); }

  // Throws ValidationError if the edge does not exist.
  double cost(const TspNode& u, const TspNode& v) const;

  // Layer 1 first (i < j), then the twin links, then layer 2 x layer 3.
  std::vector<TspEdge> edges() const;

 private:
  SymmetricMatrix<double> compatibility_;
};

PairingTspGraph build_graph(const SymmetricMatrix<double>& compatibility);

// A closed walk listed once; the hop from the last node back to the first
// is implied.
struct Tour {
  std::vector<TspNode> sequence;

  // Rotated to start at L1:1 and oriented so the smaller neighbour comes
  // second. Rotations and reflections of one cycle normalize identically.
  Tour normalized() const;

  friend bool operator==(const Tour& a, const Tour& b) {
    return a.normalized().sequence == b.normalized().sequence;
  }
};

enum class TourViolation {
  kNone,
  kWrongLength,
  kNodeOutOfRange,
  kRepeatedNode,
  kMissingNode,
  kNoSuchEdge,
  kThreeFirstLayer,
  kThirdSecondThird,
};

struct TourVerdict {
  TourViolation violation = TourViolation::kNone;
  std::size_t position = 0;
  std::string reason;

  bool valid() const { return violation == TourViolation::kNone; }
  explicit operator bool() const { return valid(); }
};

// Checks length, that every node is visited once, then scans positions in
// order for a missing edge, three consecutive layer-1 visits, or a
// layer-3 -> layer-2 -> layer-3 fragment, reporting the first hit.
TourVerdict validate_tour(int n, const Tour& tour);
TourVerdict validate_tour(const PairingTspGraph& graph, const Tour& tour);

// Throws ValidationError (with the verdict's reason) for an invalid tour.
double tour_cost(const PairingTspGraph& graph, const Tour& tour);

// The layer-1 adjacencies of a valid tour. N is inferred from the length.
Pairing pairing_from_tour(const Tour& tour);

// Visits the pairs in canonical order; pair k = {a, b} contributes
// L1:a, L1:b, L2:b, L3:k, L2:a', where a' opens the next pair.
Tour tour_from_pairing(const PairingTspGraph& graph, const Pairing& pairing);

}  // namespace pairing

#endif  // PAIRING_PAIRING_TSP_HPP_

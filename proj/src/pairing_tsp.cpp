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

#include <algorithm>

namespace pairing {

std::string node_name(const TspNode& node) {
  return "L" + std::to_string(static_cast<int>(node.layer)) + ":" + std::to_string(node.index);
}

namespace {

int layer_size(int n, Layer layer) { return layer == Layer::kThird ? n / 2 : n; }

bool in_range(int n, const TspNode& node) {
  const int layer = static_cast<int>(node.layer);
  return layer >= 1 && layer <= 3 && node.index >= 1 && node.index <= layer_size(n, node.layer);
}

}  // namespace

bool tsp_edge_exists(int n, const TspNode& u, const TspNode& v) {
  if (!in_range(n, u) || !in_range(n, v) || u == v) return false;
  const TspNode& a = u.layer <= v.layer ? u : v;
  const TspNode& b = u.layer <= v.layer ? v : u;
  if (a.layer == Layer::kFirst && b.layer == Layer::kFirst) return true;
  if (a.layer == Layer::kFirst && b.layer == Layer::kSecond) return a.index == b.index;
  return a.layer == Layer::kSecond && b.layer == Layer::kThird;
}

PairingTspGraph::PairingTspGraph(SymmetricMatrix<double> compatibility)
    : compatibility_(std::move(compatibility)) {
  require_valid_element_count(compatibility_.size());
}

std::vector<TspNode> PairingTspGraph::nodes() const {
  std::vector<TspNode> out;
  out.reserve(node_count());
  for (Layer layer : {Layer::kFirst, Layer::kSecond, Layer::kThird}) {
    for (int i = 1; i <= layer_size(n(), layer); ++i) out.push_back({layer, i});
  }
  return out;
}

double PairingTspGraph::cost(const TspNode& u, const TspNode& v) const {
  if (!has_edge(u, v)) {
    throw ValidationError("no edge between " + node_name(u) + " and " + node_name(v));
  }
  if (u.layer == Layer::kFirst && v.layer == Layer::kFirst) {
    return -compatibility_(u.index, v.index);
  }
  return 0.0;
}

std::vector<TspEdge> PairingTspGraph::edges() const {
  const int count = n();
  std::vector<TspEdge> out;
  out.reserve(static_cast<std::size_t>(count) * (count - 1) / 2 + count +
              static_cast<std::size_t>(count) * (count / 2));
  for (int i = 1; i <= count; ++i) {
    for (int j = i + 1; j <= count; ++j) {
      out.push_back({{Layer::kFirst, i}, {Layer::kFirst, j}, -compatibility_(i, j)});
    }
  }
  for (int i = 1; i <= count; ++i) {
    out.push_back({{Layer::kFirst, i}, {Layer::kSecond, i}, 0.0});
  }
  for (int i = 1; i <= count; ++i) {
    for (int k = 1; k <= count / 2; ++k) {
      out.push_back({{Layer::kSecond, i}, {Layer::kThird, k}, 0.0});
    }
  }
  return out;
}

PairingTspGraph build_graph(const SymmetricMatrix<double>& compatibility) {
  return PairingTspGraph(compatibility);
}

Tour Tour::normalized() const {
  if (sequence.empty()) return *this;
  const auto start = std::min_element(sequence.begin(), sequence.end()) - sequence.begin();
  const std::size_t len = sequence.size();
  const TspNode& forward = sequence[(start + 1) % len];
  const TspNode& backward = sequence[(start + len - 1) % len];
  Tour out;
  out.sequence.reserve(len);
  for (std::size_t step = 0; step < len; ++step) {
    const std::size_t pos = forward <= backward ? (start + step) % len : (start + len - step) % len;
    out.sequence.push_back(sequence[pos]);
  }
  return out;
}

TourVerdict validate_tour(int n, const Tour& tour) {
  const auto& seq = tour.sequence;
  const std::size_t len = seq.size();
  if (n < 4 || n % 2 != 0 || len != static_cast<std::size_t>(5 * n / 2)) {
    return {TourViolation::kWrongLength, 0,
            "tour has " + std::to_string(len) + " nodes, expected " + std::to_string(5 * n / 2)};
  }

  std::vector<std::vector<char>> seen(4);
  for (Layer layer : {Layer::kFirst, Layer::kSecond, Layer::kThird}) {
    seen[static_cast<int>(layer)].assign(layer_size(n, layer) + 1, 0);
  }
  for (std::size_t p = 0; p < len; ++p) {
    if (!in_range(n, seq[p])) {
      return {TourViolation::kNodeOutOfRange, p, "node " + node_name(seq[p]) + " does not exist"};
    }
    char& slot = seen[static_cast<int>(seq[p].layer)][seq[p].index];
    if (slot != 0) {
      return {TourViolation::kRepeatedNode, p, "node " + node_name(seq[p]) + " visited twice"};
    }
    slot = 1;
  }
  // Unreachable once length and uniqueness hold.
  for (Layer layer : {Layer::kFirst, Layer::kSecond, Layer::kThird}) {
    for (int i = 1; i <= layer_size(n, layer); ++i) {
      if (seen[static_cast<int>(layer)][i] == 0) {
        return {TourViolation::kMissingNode, 0, "node " + node_name({layer, i}) + " never visited"};
      }
    }
  }

  for (std::size_t p = 0; p < len; ++p) {
    const TspNode& a = seq[p];
    const TspNode& b = seq[(p + 1) % len];
    const TspNode& c = seq[(p + 2) % len];
    if (!tsp_edge_exists(n, a, b)) {
      return {TourViolation::kNoSuchEdge, p,
              "no such edge: " + node_name(a) + " -> " + node_name(b)};
    }
    if (a.layer == Layer::kFirst && b.layer == Layer::kFirst && c.layer == Layer::kFirst) {
      return {TourViolation::kThreeFirstLayer, p, "three consecutive first-layer visits"};
    }
    if (a.layer == Layer::kThird && b.layer == Layer::kSecond && c.layer == Layer::kThird) {
      return {TourViolation::kThirdSecondThird, p,
              "second-layer node " + node_name(b) + " between two third-layer visits"};
    }
  }
  return {};
}

TourVerdict validate_tour(const PairingTspGraph& graph, const Tour& tour) {
  return validate_tour(graph.n(), tour);
}

double tour_cost(const PairingTspGraph& graph, const Tour& tour) {
  const TourVerdict verdict = validate_tour(graph, tour);
  if (!verdict) throw ValidationError("invalid tour: " + verdict.reason);
  const auto& seq = tour.sequence;
  double total = 0.0;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    total += graph.cost(seq[p], seq[(p + 1) % seq.size()]);
  }
  return total;
}

Pairing pairing_from_tour(const Tour& tour) {
  const int n = static_cast<int>(tour.sequence.size() * 2 / 5);
  const TourVerdict verdict = validate_tour(n, tour);
  if (!verdict) throw ValidationError("invalid tour: " + verdict.reason);
  const auto& seq = tour.sequence;
  std::vector<Pair> pairs;
  for (std::size_t p = 0; p < seq.size(); ++p) {
    const TspNode& a = seq[p];
    const TspNode& b = seq[(p + 1) % seq.size()];
    if (a.layer == Layer::kFirst && b.layer == Layer::kFirst) pairs.push_back({a.index, b.index});
  }
  return Pairing(n, std::move(pairs));
}

Tour tour_from_pairing(const PairingTspGraph& graph, const Pairing& pairing) {
  if (pairing.n() != graph.n()) {
    throw ValidationError("pairing covers " + std::to_string(pairing.n()) +
                          " elements but the graph has " + std::to_string(graph.n()));
  }
  const auto& pairs = pairing.pairs();
  Tour tour;
  tour.sequence.reserve(graph.node_count());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int next_open = pairs[(k + 1) % pairs.size()].lo;
    tour.sequence.push_back({Layer::kFirst, pairs[k].lo});
    tour.sequence.push_back({Layer::kFirst, pairs[k].hi});
    tour.sequence.push_back({Layer::kSecond, pairs[k].hi});
    tour.sequence.push_back({Layer::kThird, static_cast<int>(k) + 1});
    tour.sequence.push_back({Layer::kSecond, next_open});
  }
  return tour;
}

}  // namespace pairing

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

// Domain types of the pairing problem: a symmetric compatibility matrix over
// elements 1..N, pairings (perfect matchings of the complete graph), and the
// exact enumeration oracle used to check everything else at small N.

#ifndef PAIRING_CORE_HPP_
#define PAIRING_CORE_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pairing {

// Bad user input: malformed pairings, instances, flags. Maps to CLI exit 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken internal invariant. Maps to CLI exit 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Dense symmetric N x N matrix addressed with 1-based element indices.
// The diagonal is stored but carries no meaning.
template <typename T>
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(int n, T fill = T{})
      : n_(n), data_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }

  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  // Writes both (i, j) and (j, i).
  void set(int i, int j, const T& value) {
    data_[index(i, j)] = value;
    data_[index(j, i)] = value;
  }

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i - 1) * n_ + (j - 1); }

  int n_ = 0;
  std::vector<T> data_;
};

// Hidden compatibility values c(i, j) with their declared bounds.
class Instance {
 public:
  // Throws ValidationError unless n is even and >= 4, the matrix is N x N,
  // c_min <= c_max, and every off-diagonal entry lies in [c_min, c_max].
  Instance(SymmetricMatrix<double> c, double c_min, double c_max);

  int n() const { return c_.size(); }
  double operator()(int i, int j) const { return c_(i, j); }
  const SymmetricMatrix<double>& matrix() const { return c_; }
  double c_min() const { return c_min_; }
  double c_max() const { return c_max_; }

 private:
  SymmetricMatrix<double> c_;
  double c_min_;
  double c_max_;
};

// Throws ValidationError if n is odd or below 4.
void require_valid_element_count(int n);

struct Pair {
  int lo;
  int hi;
  auto operator<=>(const Pair&) const = default;
};

// A partition of {1..N} into N/2 unordered pairs, held in canonical form:
// lo < hi inside each pair, pairs sorted by lo.
class Pairing {
 public:
  // Throws ValidationError naming the offending element when the pairs
  // overlap, leave an element uncovered, or reference indices outside 1..n.
  Pairing(int n, std::vector<Pair> pairs);

  // Pairs positions (1,2), (3,4), ... of a permutation of 1..n.
  static Pairing from_sequence(int n, std::span<const int> sequence);

  int n() const { return n_; }
  const std::vector<Pair>& pairs() const { return pairs_; }

  // Canonical pairs flattened: lo1, hi1, lo2, hi2, ...
  std::vector<int> sequence() const;

  int partner(int element) const;

  bool contains(int i, int j) const { return partner(i) == j; }

  auto operator<=>(const Pairing& other) const { return pairs_ <=> other.pairs_; }
  bool operator==(const Pairing& other) const { return pairs_ == other.pairs_; }

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<Pair> pairs_;
  std::vector<int> partner_;  // 1-based, partner_[0] unused
};

struct PairingScore {
  double value = 0.0;
  auto operator<=>(const PairingScore&) const = default;
};

// Sum over the pairing of m(lo, hi). Works for any scalar type.
template <typename T>
T pairing_sum(const SymmetricMatrix<T>& m, const Pairing& pairing) {
  T total{};
  for (const Pair& p : pairing.pairs()) total += m(p.lo, p.hi);
  return total;
}

PairingScore total_compatibility(const Instance& instance, const Pairing& pairing);

// (n - 1)!!, the number of pairings of n elements. Saturates at UINT64_MAX.
std::uint64_t pairing_count(int n);

struct EnumerationLimit {
  static constexpr int kDefaultMaxN = 12;
  int max_n = kDefaultMaxN;
};

// Visits every pairing of 1..n once in lexicographic canonical order.
// Throws ValidationError when n exceeds the limit, quoting (n - 1)!!.
void for_each_pairing(int n, const std::function<void(const Pairing&)>& visit,
                      EnumerationLimit limit = {});

std::vector<Pairing> enumerate_pairings(int n, EnumerationLimit limit = {});

struct ScoredPairing {
  Pairing pairing;
  PairingScore score;
};

// Argmax over all pairings; ties resolve to the canonically smallest one.
ScoredPairing exact_best_pairing(const SymmetricMatrix<double>& m, EnumerationLimit limit = {});
ScoredPairing exact_best_pairing(const Instance& instance, EnumerationLimit limit = {});

}  // namespace pairing

#endif  // PAIRING_CORE_HPP_

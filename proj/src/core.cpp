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

#include "pairing/core.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>

namespace pairing {

void require_valid_element_count(int n) {
  if (n < 4 || n % 2 != 0) {
    throw ValidationError("element count must be even and at least 4, got " + std::to_string(n));
  }
}

Instance::Instance(SymmetricMatrix<double> c, double c_min, double c_max)
    : c_(std::move(c)), c_min_(c_min), c_max_(c_max) {
  require_valid_element_count(c_.size());
  if (!(c_min_ <= c_max_)) {
    throw ValidationError("c_min must not exceed c_max");
  }
  for (int i = 1; i <= n(); ++i) {
    for (int j = i + 1; j <= n(); ++j) {
      const double v = c_(i, j);
      if (v != c_(j, i)) {
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
      }
      if (!(v >= c_min_ && v <= c_max_)) {
        std::ostringstream msg;
        msg << "c(" << i << ", " << j << ") = " << v << " lies outside [" << c_min_ << ", "
            << c_max_ << "]";
        throw ValidationError(msg.str());
      }
    }
  }
}

Pairing::Pairing(int n, std::vector<Pair> pairs) : n_(n), pairs_(std::move(pairs)) {
  require_valid_element_count(n);
  partner_.assign(n + 1, 0);
  for (Pair& p : pairs_) {
    if (p.lo > p.hi) std::swap(p.lo, p.hi);
    for (int e : {p.lo, p.hi}) {
      if (e < 1 || e > n) {
        throw ValidationError("element " + std::to_string(e) + " is outside 1.." +
                              std::to_string(n));
      }
    }
    if (p.lo == p.hi) {
      throw ValidationError("element " + std::to_string(p.lo) + " is paired with itself");
    }
    for (int e : {p.lo, p.hi}) {
      if (partner_[e] != 0) {
        throw ValidationError("element " + std::to_string(e) + " appears in more than one pair");
      }
    }
    partner_[p.lo] = p.hi;
    partner_[p.hi] = p.lo;
  }
  // Too many pairs would have overlapped; too few leave an element out.
  for (int e = 1; e <= n; ++e) {
    if (partner_[e] == 0) {
      throw ValidationError("element " + std::to_string(e) + " is not paired");
    }
  }
  std::sort(pairs_.begin(), pairs_.end());
}

Pairing Pairing::from_sequence(int n, std::span<const int> sequence) {
  if (sequence.size() != static_cast<std::size_t>(n) || n % 2 != 0) {
    throw ValidationError("sequence length must equal the even element count");
  }
  std::vector<Pair> pairs;
  pairs.reserve(sequence.size() / 2);
  for (std::size_t k = 0; k + 1 < sequence.size(); k += 2) {
    pairs.push_back({sequence[k], sequence[k + 1]});
  }
  return Pairing(n, std::move(pairs));
}

std::vector<int> Pairing::sequence() const {
  std::vector<int> out;
  out.reserve(n_);
  for (const Pair& p : pairs_) {
    out.push_back(p.lo);
    out.push_back(p.hi);
  }
  return out;
}

int Pairing::partner(int element) const {
  if (element < 1 || element > n_) {
    throw ValidationError("element " + std::to_string(element) + " is outside 1.." +
                          std::to_string(n_));
  }
  return partner_[element];
}

std::string Pairing::to_string() const {
  std::string out = "{";
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    if (k > 0) out += ",";
    out += "{" + std::to_string(pairs_[k].lo) + "," + std::to_string(pairs_[k].hi) + "}";
  }
  return out + "}";
}

PairingScore total_compatibility(const Instance& instance, const Pairing& pairing) {
  if (pairing.n() != instance.n()) {
    throw ValidationError("pairing covers " + std::to_string(pairing.n()) +
                          " elements but the instance has " + std::to_string(instance.n()));
  }
  return {pairing_sum(instance.matrix(), pairing)};
}

std::uint64_t pairing_count(int n) {
  std::uint64_t count = 1;
  for (int k = n - 1; k > 1; k -= 2) {
    if (count > std::numeric_limits<std::uint64_t>::max() / k) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= static_cast<std::uint64_t>(k);
  }
  return count;
}

namespace {

// Pairs the smallest free element with each larger free element in turn.
void enumerate_into(std::vector<int>& partner, std::vector<Pair>& stack, int n,
                    const std::function<void(const Pairing&)>& visit) {
  int first = 1;
  while (first <= n && partner[first] != 0) ++first;
  if (first > n) {
    visit(Pairing(n, stack));
    return;
  }
  for (int other = first + 1; other <= n; ++other) {
    if (partner[other] != 0) continue;
    partner[first] = other;
    partner[other] = first;
    stack.push_back({first, other});
    enumerate_into(partner, stack, n, visit);
    stack.pop_back();
    partner[first] = 0;
    partner[other] = 0;
  }
}

}  // namespace

void for_each_pairing(int n, const std::function<void(const Pairing&)>& visit,
                      EnumerationLimit limit) {
  require_valid_element_count(n);
  if (n > limit.max_n) {
    throw ValidationError("refusing to enumerate " + std::to_string(pairing_count(n)) +
                          " pairings of " + std::to_string(n) +
                          " elements (enumeration cap is n = " + std::to_string(limit.max_n) + ")");
  }
  std::vector<int> partner(n + 1, 0);
  std::vector<Pair> stack;
  stack.reserve(n / 2);
  enumerate_into(partner, stack, n, visit);
}

std::vector<Pairing> enumerate_pairings(int n, EnumerationLimit limit) {
  std::vector<Pairing> out;
  for_each_pairing(n, [&](const Pairing& p) { out.push_back(p); }, limit);
  return out;
}

ScoredPairing exact_best_pairing(const SymmetricMatrix<double>& m, EnumerationLimit limit) {
  std::optional<ScoredPairing> best;
  for_each_pairing(
      m.size(),
      [&](const Pairing& p) {
        const double score = pairing_sum(m, p);
        if (!best || score > best->score.value) best = ScoredPairing{p, {score}};
      },
      limit);
  return *best;
}

ScoredPairing exact_best_pairing(const Instance& instance, EnumerationLimit limit) {
  return exact_best_pairing(instance.matrix(), limit);
}

}  // namespace pairing

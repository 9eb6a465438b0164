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

#include <algorithm>
#include <map>
#include <optional>

namespace pairing {

void require_distinct_indices(int n, int i, int j, int k, int l) {
  const int idx[] = {i, j, k, l};
  for (int a = 0; a < 4; ++a) {
    if (idx[a] < 1 || idx[a] > n) {
      throw ValidationError("rule index " + std::to_string(idx[a]) + " is outside 1.." +
                            std::to_string(n));
    }
    for (int b = a + 1; b < 4; ++b) {
      if (idx[a] == idx[b]) {
        throw ValidationError("exchange rule indices must be distinct, " + std::to_string(idx[a]) +
                              " repeats");
      }
    }
  }
}

RulePairings rule_pairings(int n, int i, int j, int k, int l) {
  require_valid_element_count(n);
  require_distinct_indices(n, i, j, k, l);
  std::vector<Pair> rest;
  int pending = 0;
  for (int e = 1; e <= n; ++e) {
    if (e == i || e == j || e == k || e == l) continue;
    if (pending == 0) {
      pending = e;
    } else {
      rest.push_back({pending, e});
      pending = 0;
    }
  }
  std::vector<Pair> before = rest;
  before.push_back({i, j});
  before.push_back({k, l});
  std::vector<Pair> after = std::move(rest);
  after.push_back({i, k});
  after.push_back({j, l});
  return {Pairing(n, std::move(before)), Pairing(n, std::move(after))};
}

double measure_exchange_rule(ObservationOracle& oracle, int i, int j, int k, int l,
                             ObservationMemo* memo) {
  const RulePairings rp = rule_pairings(oracle.n(), i, j, k, l);
  if (memo != nullptr) {
    const double before = memo->observe(oracle, rp.before);
    const double after = memo->observe(oracle, rp.after);
    return after - before;
  }
  const double before = oracle.observe(rp.before);
  const double after = oracle.observe(rp.after);
  return after - before;
}

TildeMatrix to_double(const ExactTildeMatrix& exact) {
  TildeMatrix out{exact.n, SymmetricMatrix<double>(exact.n)};
  for (int a = 1; a <= exact.n; ++a) {
    for (int b = a + 1; b <= exact.n; ++b) {
      out.t.set(a, b, static_cast<double>(exact.t(a, b)));
    }
  }
  return out;
}

ExactTildeMatrix tilde_from_matrix(const SymmetricMatrix<Rational>& c) {
  const int n = c.size();
  require_valid_element_count(n);
  Rational first_row_sum = 0;
  for (int k = 2; k <= n; ++k) first_row_sum += c(1, k);
  const Rational shift = Rational(2, n - 2) * first_row_sum;
  ExactTildeMatrix out{n, SymmetricMatrix<Rational>(n)};
  for (int a = 2; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      out.t.set(a, b, c(a, b) - c(1, a) - c(1, b) + shift);
    }
  }
  return out;
}

template <typename T>
TildeMatrixT<T> tilde_from_rule_values(const RuleValues<T>& values) {
  const int n = values.n;
  require_valid_element_count(n);
  // offset(a, b) = t(a, b) - t(2, 3)
  SymmetricMatrix<T> offset(n);
  for (int j = 4; j <= n; ++j) {
    offset.set(2, j, values.horizontal[j]);
    for (int i = 3; i < j; ++i) offset.set(i, j, values.horizontal[j] + values.vertical(i, j));
  }
  // The anchor's pairs {3,4}, {5,6}, ... each equal x + offset.
  T anchor_offsets{};
  for (int a = 3; a < n; a += 2) anchor_offsets += offset(a, a + 1);
  const T x = (values.anchor - anchor_offsets) / T(n / 2 - 1);

  TildeMatrixT<T> out{n, SymmetricMatrix<T>(n)};
  for (int a = 2; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) out.t.set(a, b, x + offset(a, b));
  }
  return out;
}

template TildeMatrixT<double> tilde_from_rule_values(const RuleValues<double>&);
template TildeMatrixT<Rational> tilde_from_rule_values(const RuleValues<Rational>&);

std::uint64_t observation_budget(int n) {
  const auto m = static_cast<std::uint64_t>(n);
  return 2 * (m - 3) + (m - 2) * (m - 3) + 1;
}

namespace {

Pairing anchor_pairing(int n) {
  std::vector<Pair> pairs;
  for (int a = 1; a < n; a += 2) pairs.push_back({a, a + 1});
  return Pairing(n, std::move(pairs));
}

template <typename T>
ReconstructionT<T> reconstruct(ObservationOracle& oracle, ReconstructOptions options) {
  const int n = oracle.n();
  require_valid_element_count(n);
  const std::uint64_t start = oracle.query_count();

  std::optional<ObservationMemo> memo;
  if (options.share_observations) memo.emplace();
  auto observe = [&](const Pairing& p) -> T {
    return T(memo ? memo->observe(oracle, p) : oracle.observe(p));
  };
  // Differences are taken in T so the exact path never rounds.
  auto measure = [&](int i, int j, int k, int l) -> T {
    const RulePairings rp = rule_pairings(n, i, j, k, l);
    const T before = observe(rp.before);
    const T after = observe(rp.after);
    return after - before;
  };

  RuleValues<T> values(n);
  for (int j = 4; j <= n; ++j) values.horizontal[j] = measure(1, j, 3, 2);
  for (int j = 4; j <= n; ++j) {
    for (int i = 3; i < j; ++i) values.vertical.set(i, j, measure(1, i, 2, j));
  }
  values.anchor = observe(anchor_pairing(n));

  return {tilde_from_rule_values(values), oracle.query_count() - start};
}

}  // namespace

Reconstruction reconstruct_tilde(ObservationOracle& oracle, ReconstructOptions options) {
  return reconstruct<double>(oracle, options);
}

ExactReconstruction reconstruct_tilde_exact(ObservationOracle& oracle, ReconstructOptions options) {
  return reconstruct<Rational>(oracle, options);
}

std::uint64_t minimal_observation_count(int n) {
  const auto m = static_cast<std::uint64_t>(n);
  return (m - 1) * (m - 2) / 2;
}

std::size_t free_coordinate_index(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  if (a < 2 || b > n || a == b) {
    throw ValidationError("(" + std::to_string(a) + ", " + std::to_string(b) +
                          ") is not a free coordinate");
  }
  // Rows a' = 2..a-1 hold n - a' entries each.
  std::size_t index = 0;
  for (int r = 2; r < a; ++r) index += static_cast<std::size_t>(n - r);
  return index + static_cast<std::size_t>(b - a - 1);
}

std::vector<std::size_t> observation_vector(const Pairing& pairing) {
  std::vector<std::size_t> coords;
  for (const Pair& p : pairing.pairs()) {
    if (p.lo != 1) coords.push_back(free_coordinate_index(pairing.n(), p.lo, p.hi));
  }
  std::sort(coords.begin(), coords.end());
  return coords;
}

namespace {

// Incremental exact elimination. Rows are kept so that each one vanishes on
// the pivot columns of all rows inserted before it; each row also remembers
// how it is built from the selected candidates.
class ExactBasis {
 public:
  explicit ExactBasis(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  // Reduces `coords` (a 0/1 vector given by its support). If independent it
  // joins the basis as selected candidate `rank()` and nullopt is returned;
  // otherwise its coefficients over the selected candidates are returned.
  std::optional<std::vector<Rational>> insert(const std::vector<std::size_t>& coords) {
    std::vector<Rational> v(dim_);
    for (std::size_t c : coords) v[c] = 1;
    std::vector<Rational> expr(rows_.size() + 1);
    expr.back() = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& entry = v[pivots_[r]];
      if (entry == 0) continue;
      const Rational f = entry / rows_[r][pivots_[r]];
      for (std::size_t c = 0; c < dim_; ++c) {
        if (rows_[r][c] != 0) v[c] -= f * rows_[r][c];
      }
      for (std::size_t s = 0; s < exprs_[r].size(); ++s) {
        if (exprs_[r][s] != 0) expr[s] -= f * exprs_[r][s];
      }
    }
    const auto pivot = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (pivot == v.end()) {
      // 0 = candidate - sum(f * rows), so candidate = -(expr without itself).
      expr.pop_back();
      for (Rational& x : expr) x = -x;
      return expr;
    }
    pivots_.push_back(static_cast<std::size_t>(pivot - v.begin()));
    rows_.push_back(std::move(v));
    exprs_.push_back(std::move(expr));
    return std::nullopt;
  }

 private:
  std::size_t dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::vector<Rational>> exprs_;
  std::vector<std::size_t> pivots_;
};

std::vector<PlanTerm> combine(const std::vector<PlanTerm>& plus,
                              const std::vector<PlanTerm>& minus) {
  std::map<std::size_t, Rational> acc;
  for (const PlanTerm& t : plus) acc[t.observation] += t.coefficient;
  for (const PlanTerm& t : minus) acc[t.observation] -= t.coefficient;
  std::vector<PlanTerm> out;
  for (auto& [obs, coef] : acc) {
    if (coef != 0) out.push_back({obs, coef});
  }
  return out;
}

}  // namespace

ObservationPlan minimal_observation_plan(int n) {
  require_valid_element_count(n);
  const std::size_t dim = minimal_observation_count(n);

  struct RuleRef {
    DerivedValue kind;
    int i, j;
    Pairing before, after;
  };
  std::vector<RuleRef> rules;
  for (int j = 4; j <= n; ++j) {
    auto rp = rule_pairings(n, 1, j, 3, 2);
    rules.push_back({DerivedValue::kHorizontalRule, 0, j, rp.before, rp.after});
  }
  for (int j = 4; j <= n; ++j) {
    for (int i = 3; i < j; ++i) {
      auto rp = rule_pairings(n, 1, i, 2, j);
      rules.push_back({DerivedValue::kVerticalRule, i, j, rp.before, rp.after});
    }
  }
  const Pairing anchor = anchor_pairing(n);

  ObservationPlan plan;
  plan.n = n;
  ExactBasis basis(dim);
  std::map<Pairing, std::vector<PlanTerm>> expressed;

  auto express = [&](const Pairing& p) -> const std::vector<PlanTerm>& {
    if (auto it = expressed.find(p); it != expressed.end()) return it->second;
    std::vector<PlanTerm> terms;
    if (auto coefs = basis.insert(observation_vector(p))) {
      for (std::size_t s = 0; s < coefs->size(); ++s) {
        if ((*coefs)[s] != 0) terms.push_back({s, (*coefs)[s]});
      }
    } else {
      terms.push_back({plan.pairings.size(), Rational(1)});
      plan.pairings.push_back(p);
    }
    return expressed.emplace(p, std::move(terms)).first->second;
  };

  for (const RuleRef& rule : rules) {
    express(rule.before);
    express(rule.after);
  }
  express(anchor);

  if (basis.rank() != dim || plan.pairings.size() != dim) {
    throw InternalError("observation plan for n = " + std::to_string(n) + " reached rank " +
                        std::to_string(basis.rank()) + " of " + std::to_string(dim));
  }

  for (const RuleRef& rule : rules) {
    plan.derivations.push_back(
        {rule.kind, rule.i, rule.j, combine(expressed.at(rule.after), expressed.at(rule.before))});
  }
  plan.derivations.push_back({DerivedValue::kAnchor, 0, 0, expressed.at(anchor)});
  return plan;
}

namespace {

template <typename T>
T coefficient_as(const Rational& r);

template <>
double coefficient_as<double>(const Rational& r) {
  return static_cast<double>(r);
}

template <>
Rational coefficient_as<Rational>(const Rational& r) {
  return r;
}

template <typename T>
TildeMatrixT<T> execute(ObservationOracle& oracle, const ObservationPlan& plan) {
  if (plan.n != oracle.n()) {
    throw ValidationError("plan is for " + std::to_string(plan.n) +
                          " elements but the oracle hides " + std::to_string(oracle.n()));
  }
  std::vector<T> observed;
  observed.reserve(plan.pairings.size());
  for (const Pairing& p : plan.pairings) observed.push_back(T(oracle.observe(p)));

  RuleValues<T> values(plan.n);
  for (const Derivation& d : plan.derivations) {
    T value{};
    for (const PlanTerm& term : d.terms) {
      value += coefficient_as<T>(term.coefficient) * observed.at(term.observation);
    }
    switch (d.kind) {
      case DerivedValue::kHorizontalRule:
        values.horizontal[d.j] = value;
        break;
      case DerivedValue::kVerticalRule:
        values.vertical.set(d.i, d.j, value);
        break;
      case DerivedValue::kAnchor:
        values.anchor = value;
        break;
    }
  }
  return tilde_from_rule_values(values);
}

}  // namespace

TildeMatrix execute_plan(ObservationOracle& oracle, const ObservationPlan& plan) {
  return execute<double>(oracle, plan);
}

ExactTildeMatrix execute_plan_exact(ObservationOracle& oracle, const ObservationPlan& plan) {
  return execute<Rational>(oracle, plan);
}

}  // namespace pairing

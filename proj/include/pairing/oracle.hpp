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

#ifndef PAIRING_ORACLE_HPP_
#define PAIRING_ORACLE_HPP_

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pairing/core.hpp"

namespace pairing {

struct LoggedObservation {
  Pairing pairing;
  double value;
};

// Sum-only access to a hidden instance. The only thing it reveals is the
// total compatibility of a submitted pairing; every call is counted,
// duplicates included. observe() is safe to call from several threads.
class ObservationOracle {
 public:
  explicit ObservationOracle(Instance hidden, bool keep_log = false);

  ObservationOracle(const ObservationOracle&) = delete;
  ObservationOracle& operator=(const ObservationOracle&) = delete;

  int n() const { return hidden_.n(); }
  double c_min() const { return hidden_.c_min(); }
  double c_max() const { return hidden_.c_max(); }

  // Throws ValidationError for a pairing of the wrong size; such calls are
  // not counted.
  double observe(const Pairing& pairing);

  std::uint64_t query_count() const;
  void reset_count();

  std::vector<LoggedObservation> query_log() const;

  // Adds zero-mean Gaussian noise of the given standard deviation to every
  // observation. Magnitude 0 (the default) disables it.
  void set_noise(double stddev, std::uint64_t seed);

 private:
  friend struct OracleBackdoor;

  const Instance hidden_;
  const bool keep_log_;

  mutable std::mutex mutex_;
  std::uint64_t count_ = 0;
  std::vector<LoggedObservation> log_;
  double noise_stddev_ = 0.0;
  std::mt19937_64 noise_rng_;
};

// Test-only view of the hidden matrix. Production code must not include
// this; it exists so tests can compare reconstructions with the truth.
struct OracleBackdoor {
  static const Instance& hidden(const ObservationOracle& oracle) { return oracle.hidden_; }
};

// Caches observations by canonical pairing so repeated submissions cost
// nothing. Not thread-safe.
class ObservationMemo {
 public:
  double observe(ObservationOracle& oracle, const Pairing& pairing);
  std::size_t size() const { return values_.size(); }

 private:
  std::map<Pairing, double> values_;
};

}  // namespace pairing

#endif  // PAIRING_ORACLE_HPP_

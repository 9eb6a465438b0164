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

#include "pairing/oracle.hpp"

namespace pairing {

ObservationOracle::ObservationOracle(Instance hidden, bool keep_log)
    : hidden_(std::move(hidden)), keep_log_(keep_log) {}

double ObservationOracle::observe(const Pairing& pairing) {
  double value = total_compatibility(hidden_, pairing).value;
  std::lock_guard<std::mutex> lock(mutex_);
  if (noise_stddev_ > 0.0) {
    value += std::normal_distribution<double>(0.0, noise_stddev_)(noise_rng_);
  }
  ++count_;
  if (keep_log_) log_.push_back({pairing, value});
  return value;
}

std::uint64_t ObservationOracle::query_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return count_;
}

void ObservationOracle::reset_count() {
  std::lock_guard<std::mutex> lock(mutex_);
  count_ = 0;
  log_.clear();
}

std::vector<LoggedObservation> ObservationOracle::query_log() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return log_;
}

void ObservationOracle::set_noise(double stddev, std::uint64_t seed) {
  if (!(stddev >= 0.0)) throw ValidationError("noise magnitude must be non-negative");
  std::lock_guard<std::mutex> lock(mutex_);
  noise_stddev_ = stddev;
  noise_rng_.seed(seed);
}

double ObservationMemo::observe(ObservationOracle& oracle, const Pairing& pairing) {
  if (auto it = values_.find(pairing); it != values_.end()) return it->second;
  const double value = oracle.observe(pairing);
  values_.emplace(pairing, value);
  return value;
}

}  // namespace pairing

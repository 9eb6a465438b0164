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

// Instance files.
//
// Text form: a header line `N C_MIN C_MAX`, then the strict upper triangle
// of c row by row (row i holds c(i, i+1) .. c(i, N)), whitespace separated.
//
// JSON form: {"n": N, "c_min": lo, "c_max": hi, "upper_triangle": [...]}
// where upper_triangle is either the flat row-major list or a list of rows.

#ifndef PAIRING_INSTANCE_IO_HPP_
#define PAIRING_INSTANCE_IO_HPP_

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "pairing/core.hpp"

namespace pairing {

Instance parse_instance_text(std::string_view text);
Instance parse_instance_json(const nlohmann::json& doc);

// Sniffs the format: a leading '{' selects JSON.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

std::string format_instance_text(const Instance& instance);
nlohmann::json instance_to_json(const Instance& instance);

// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

std::string read_file(const std::string& path);

}  // namespace pairing

#endif  // PAIRING_INSTANCE_IO_HPP_

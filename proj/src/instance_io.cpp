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

#include "pairing/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace pairing {
namespace {

double parse_double(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) tokens.push_back(text.substr(start, pos - start));
  }
  return tokens;
}

int parse_element_count(double raw) {
  if (raw != static_cast<double>(static_cast<int>(raw))) {
    throw ValidationError("element count must be an integer");
  }
  const int n = static_cast<int>(raw);
  require_valid_element_count(n);
  return n;
}

Instance build(int n, double c_min, double c_max, const std::vector<double>& upper) {
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (upper.size() != expected) {
    throw ValidationError("upper triangle of " + std::to_string(n) + " elements needs " +
                          std::to_string(expected) + " values, got " +
                          std::to_string(upper.size()));
  }
  SymmetricMatrix<double> c(n);
  std::size_t k = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) c.set(i, j, upper[k++]);
  }
  return Instance(std::move(c), c_min, c_max);
}

}  // namespace

Instance parse_instance_text(std::string_view text) {
  const auto tokens = split_whitespace(text);
  if (tokens.size() < 3) {
    throw ValidationError("instance header must be 'N C_MIN C_MAX'");
  }
  const int n = parse_element_count(parse_double(tokens[0]));
  std::vector<double> upper;
  upper.reserve(tokens.size() - 3);
  for (std::size_t k = 3; k < tokens.size(); ++k) upper.push_back(parse_double(tokens[k]));
  return build(n, parse_double(tokens[1]), parse_double(tokens[2]), upper);
}

Instance parse_instance_json(const nlohmann::json& doc) {
  try {
    const int n = parse_element_count(doc.at("n").get<double>());
    std::vector<double> upper;
    for (const auto& item : doc.at("upper_triangle")) {
      if (item.is_array()) {
        for (const auto& v : item) upper.push_back(v.get<double>());
      } else {
        upper.push_back(item.get<double>());
      }
    }
    return build(n, doc.at("c_min").get<double>(), doc.at("c_max").get<double>(), upper);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed instance JSON: ") + e.what());
  }
}

Instance parse_instance(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("malformed instance JSON: ") + e.what());
    }
    return parse_instance_json(doc);
  }
  return parse_instance_text(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InternalError("number formatting failed");
  return std::string(buf, ptr);
}

std::string format_instance_text(const Instance& instance) {
  const int n = instance.n();
  std::string out = std::to_string(n) + " " + format_number(instance.c_min()) + " " +
                    format_number(instance.c_max()) + "\n";
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (j > i + 1) out += ' ';
      out += format_number(instance(i, j));
    }
    out += '\n';
  }
  return out;
}

nlohmann::json instance_to_json(const Instance& instance) {
  const int n = instance.n();
  nlohmann::json upper = nlohmann::json::array();
  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) upper.push_back(instance(i, j));
  }
  return {{"n", n},
          {"c_min", instance.c_min()},
          {"c_max", instance.c_max()},
          {"upper_triangle", std::move(upper)}};
}

}  // namespace pairing

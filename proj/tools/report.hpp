// Copyright 2026 The feyncount Authors.
//
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

#ifndef FEYNCOUNT_TOOLS_REPORT_HPP
#define FEYNCOUNT_TOOLS_REPORT_HPP

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "feyncount/asymptotics.hpp"
#include "feyncount/exact.hpp"
#include "json.hpp"

namespace feyncount::cli {

enum class Format { plain, csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "plain") return Format::plain;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + s + "' (expected plain, csv or json)");
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Owns the output stream: stdout, or a file given by --output.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline nlohmann::ordered_json prefactor_json(const AsymptoticPrefactor& p) {
  nlohmann::ordered_json j;
  j["sign"] = p.sign;
  j["scalar"] = to_string(p.scalar);
  j["sqrt"] = to_string(p.radicand);
  if (auto b = p.geometric_base()) j["base"] = to_string(*b);
  else j["geometric"] = to_string(p.geometric);
  j["factorial"] = p.factorial_2m ? "(2m)!" : "";
  auto factors = nlohmann::ordered_json::array();
  for (const auto& f : p.factors) factors.push_back(f.str());
  j["polynomial"] = factors;
  j["m_power"] = p.m_power;
  j["text"] = p.str();
  return j;
}

}  // namespace feyncount::cli

#endif  // FEYNCOUNT_TOOLS_REPORT_HPP

// Copyright 2026 The entbreak Authors
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

// Machine-readable verification reports. See docs/report-schema.md.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "entbreak/tensor.hpp"

namespace entbreak {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "entbreak-report/1";

/// Where the expected value of a check comes from: a printed value or claim
/// (kPaper), an identity true by construction (kTrivial), or an independent
/// computation (kDerived).
enum class Provenance { kPaper, kTrivial, kDerived };

const char* to_string(Provenance p);

struct Check {
  std::string id;
  std::string description;
  Json values = Json::object();
  double threshold = 0.0;
  Provenance provenance = Provenance::kDerived;
  bool pass = false;
};

struct Environment {
  std::string version;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
};

struct CertReport {
  std::string suite;
  std::vector<Check> checks;
  Environment environment;
  /// Suite-specific data that is reported but not asserted.
  Json data = Json::object();
  std::vector<CertReport> suites;
  double wall_seconds = 0.0;

  Check& add(Check check);
  /// Throws Error when no check has this id.
  const Check& find(const std::string& id) const;
  bool has(const std::string& id) const;

  /// Conjunction of every check, including nested suites.
  bool passed() const;
  int failures() const;

  Json to_json(bool include_timings = true) const;
};

/// Real and imaginary parts as nested arrays.
Json matrix_json(const CMatrix& m);

std::string library_version();

}  // namespace entbreak

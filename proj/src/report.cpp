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

#include "entbreak/report.hpp"

#include <algorithm>

#ifndef ENTBREAK_VERSION
#define ENTBREAK_VERSION "0.0.0"
#endif

namespace entbreak {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::kPaper: return "PAPER";
    case Provenance::kTrivial: return "TRIVIAL";
    case Provenance::kDerived: return "DERIVED";
  }
  return "DERIVED";
}

Check& CertReport::add(Check check) {
  checks.push_back(std::move(check));
  return checks.back();
}

bool CertReport::has(const std::string& id) const {
  return std::any_of(checks.begin(), checks.end(), [&](const Check& c) { return c.id == id; });
}

const Check& CertReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw Error("report '" + suite + "' has no check '" + id + "'");
}

bool CertReport::passed() const { return failures() == 0; }

int CertReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  for (const auto& s : suites) n += s.failures();
  return n;
}

Json CertReport::to_json(bool include_timings) const {
  Json j;
  j["schema"] = kReportSchema;
  j["suite"] = suite;
  j["passed"] = passed();
  Json env;
  env["version"] = environment.version;
  env["seed"] = environment.seed;
  env["tolerances"] = Json::object();
  for (const auto& [k, v] : environment.tolerances) env["tolerances"][k] = v;
  j["environment"] = env;
  j["checks"] = Json::array();
  for (const auto& c : checks) {
    Json jc;
    jc["id"] = c.id;
    jc["description"] = c.description;
    jc["values"] = c.values;
    jc["threshold"] = c.threshold;
    jc["provenance"] = to_string(c.provenance);
    jc["pass"] = c.pass;
    j["checks"].push_back(std::move(jc));
  }
  j["data"] = data;
  if (!suites.empty()) {
    j["suites"] = Json::array();
    for (const auto& s : suites) j["suites"].push_back(s.to_json(include_timings));
  }
  if (include_timings) j["timings"] = {{"wall_seconds", wall_seconds}};
  return j;
}

Json matrix_json(const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array(), c = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      r.push_back(m(i, k).real());
      c.push_back(m(i, k).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return {{"re", re}, {"im", im}};
}

std::string library_version() { return ENTBREAK_VERSION; }

}  // namespace entbreak

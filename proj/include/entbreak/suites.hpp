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

// Named verification suites behind the `verify` command line tool.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "entbreak/metatransitivity.hpp"
#include "entbreak/report.hpp"
#include "entbreak/superactivation.hpp"

namespace entbreak {

struct Tolerances {
  double obs1 = 1e-12;              // ||tr_BC rho - I/2||
  double obs2_ab = 1e-6;            // |min PT eig of rho_AB - 0|
  double obs2_ac = 1e-5;            // |min PT eig of rho_AC - 0.00206|
  double certify = 1e-6;            // dual bound must be below -certify
  double residual = 1e-8;           // certificate residuals
  double choi_printed = 1e-3;       // element-wise against the printed matrix
  double choi_eig = 1e-3;           // against the printed eigenvalue
  double kraus = 1e-10;
  double psucc = 1e-10;
  double choi_valid = 1e-10;
  double sweep_nonpositive = 1e-9;
  double sweep_zero = 1e-6;
  double sweep_fraction = 0.99;
  double norm = 1e-9;
  double marginal = 1e-9;
  double ppt = 1e-6;
  double tomography = 1e-6;
  double entangled = 1e-6;

  /// Tighter numerical tolerances; printed-value comparisons are unchanged.
  static Tolerances strict();
  /// "default" or "strict"; throws ValidationError otherwise.
  static Tolerances profile(const std::string& name);

  std::map<std::string, double> as_map() const;
  /// Sets a tolerance by its as_map() name; "obs2" sets both AB and AC PT
  /// tolerances. Returns false for unknown names.
  bool set(const std::string& name, double value);
};

struct SuiteConfig {
  Tolerances tol;
  std::uint64_t seed = 1;
};

/// The observation spec: marginals AB and AC of rho, target BC.
MarginalSpec observation_spec(const DenseMatrix& rho_abc);

CertReport cmd_observations(const SuiteConfig& config = {});

/// realization is "canonical" or "seed:N"; the latter draws a realization
/// from random_extension on the observation spec.
CertReport cmd_superactivate(const std::string& realization, const SuiteConfig& config = {});

/// Writes `z,phi,min_pt_eig` rows when out_path is non-empty.
CertReport cmd_sweep(int grid_n, const std::string& out_path, const SuiteConfig& config = {});
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& points);

CertReport cmd_family(const std::vector<double>& q_list, const SuiteConfig& config = {});

/// which is 'a' or 'b'.
CertReport cmd_fourqubit(char which, const SuiteConfig& config = {});

CertReport cmd_all(const SuiteConfig& config = {}, bool parallel = false);

/// The 4x4 matrix printed for the canonical realization.
CMatrix printed_m_choi();
inline constexpr double kPrintedMinPtEig = -0.1179;
inline constexpr double kPrintedObs2Ac = 0.00206;

}  // namespace entbreak

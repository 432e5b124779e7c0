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

// Explicit states and channels of the broadcasting example.
//
// rho_abc() is a rank-2 three-qubit state with maximally mixed A-marginal whose
// AB and AC marginals are separable, yet every three-qubit state sharing those
// two marginals is entangled across BC. Read as a Choi state it defines the
// broadcasting channel A -> BC whose B and C marginal channels are both
// entanglement breaking.

#pragma once

#include "entbreak/channel.hpp"

namespace entbreak::states {

StateVector psi1();
StateVector psi2();

/// (|psi1><psi1| + |psi2><psi2|) / 2 on layout [A,B,C].
DenseMatrix rho_abc();

/// Parameters of the one-parameter family; q = 1 recovers rho_abc().
struct FamilyParams {
  double q = 1.0;
  double x = 0.0;
  double p = 0.0;

  /// x = 4/9 + q (sqrt((sqrt(15)+5)/40) - 4/9), p = p(x). Throws for q outside [0,1].
  static FamilyParams from_q(double q);
};

/// Mixing weight p(x) = 20x sqrt(1-4x^2) / (20x sqrt(1-4x^2) + sqrt(10)).
double family_weight(double x);

StateVector psi2_x(double x);
DenseMatrix rho_abc_family(double q);

/// cos(pi z)|0> + exp(2 pi i phi) sin(pi z)|1> on layout [A].
StateVector xi_input(double phi, double z);

/// Four-qubit pure states on [A,B,C,D], stored as printed (15 digits).
StateVector four_qubit_xi();
StateVector four_qubit_sigma();

/// The broadcasting channel E_{A->BC} with Choi state rho_abc().
Channel broadcast_channel();
/// Its marginal channels E_{A->B} and E_{A->C}.
Channel channel_to_b();
Channel channel_to_c();

}  // namespace entbreak::states

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

// Super-activation of quantum memory from a broadcasting realization
// N: A' -> BC of two entanglement-breaking channels.
//
// With E = tr_C o N the channel to B and alpha the smallest eigenvalue of
// E(I/2), the filters
//   L_B  = sqrt(alpha) E(I/2)^{-1/2}
//   K_AB = <Phi+|_AB (I_A (x) L_B)
// turn a fresh input tau on A into the channel
//   M(tau) = (K_AB (x) I_C) [tau (x) N(I/2)] (K_AB (x) I_C)^dag / p_succ,
// p_succ = alpha / 2, whose Choi state is (L (x) I) N(I/2) (L (x) I)^dag / (2 alpha)
// with B playing the role of the reference system.

#pragma once

#include <string>
#include <vector>

#include "entbreak/channel.hpp"
#include "entbreak/report.hpp"

namespace entbreak {

namespace tol {
inline constexpr double kRealizationMatch = 1e-8;
inline constexpr double kEntangled = 1e-6;
inline constexpr double kTomography = 1e-6;
}  // namespace tol

/// Label of the fresh input system of M.
inline constexpr const char* kFreshInput = "A";

struct Pipeline {
  Channel realization;  // N: A' -> BC
  Channel eb_channel_B;  // E = tr_C o N
  double alpha = 0.0;
  FilterOp L_B;
  FilterOp K_AB;

  double p_succ() const { return alpha / 2.0; }
};

/// Smallest eigenvalue of E(I/2). Throws UnsupportedDimensionError unless E
/// maps a qubit to a qubit.
double alpha_of(const Channel& E);

/// sqrt(alpha) E(I/2)^{-1/2} on E's output. Throws ValidationError when
/// E(I/2) is rank deficient.
FilterOp filter_L(const Channel& E);

/// <Phi+|_{A,B} (I (x) L_B) from [A, B] to scalars.
FilterOp filter_K(const Channel& E);

/// The pipeline for N with Step 2 acting on `step2_output` (default: the
/// first output of N).
Pipeline make_pipeline(const Channel& N, const std::string& step2_output = "");

/// Throws ValidationError unless E's Choi state is the marginal of N's on
/// E's output within 1e-8.
void check_realization(const Channel& N, const Channel& E);

/// The action tau -> M(tau); inputs may carry any single-qubit label.
LinearMap superactivated_action(const Channel& N, const Channel& E);

/// M as a validated channel; its Choi reference carries E's output label.
Channel superactivated_map(const Channel& N, const Channel& E);

/// (L (x) I) N(I/2) (L (x) I)^dag / (2 alpha) on N's output layout.
DenseMatrix m_choi(const Channel& N, const Channel& E);

/// Gamma_j = sqrt(2 lambda_j) (<Phi+|_{A,B} (x) I_C)(I_A (x) rho_B^{-1/2} (x) I_C)(I_A (x) |lambda_j>)
/// over the eigenpairs of rho_bc with lambda_j above the rank cutoff.
/// rho_bc is laid out as [B, C]; the Kraus operators map A to C.
std::vector<FilterOp> kraus_gamma(const DenseMatrix& rho_bc);

/// Passes iff M's Choi state has a partial-transpose eigenvalue below -1e-6
/// and the inverse filter sqrt(E(I/2)) on the reference of M's Choi state
/// recovers N(I/2) with probability 1/2 (both within 1e-10). Throws
/// ValidationError when E is not N's marginal.
CertReport verify_fact1(const Channel& N, const Channel& E);

struct SweepPoint {
  double z = 0.0;
  double phi = 0.0;
  double min_pt_eig = 0.0;
};

/// Smallest partial-transpose eigenvalue of ch(|xi><xi|) with
/// |xi> = cos(pi z)|0> + e^{2 pi i phi} sin(pi z)|1>; ch must map a qubit to
/// two qubits.
double output_min_pt(const Channel& ch, double phi, double z);

/// Uniform grid over [0,1]^2, rows ordered z-major then phi.
std::vector<SweepPoint> sweep_output_entanglement(int grid_n);
std::vector<SweepPoint> sweep_output_entanglement(const Channel& ch, int grid_n);

/// Maximum over phi of output_min_pt at fixed z: the best of grid_n uniform
/// phi samples refined by golden-section search on the neighbouring cells.
SweepPoint max_along_z(const Channel& ch, double z, int grid_n);

/// Compares the Choi marginal of N4: A -> BCD on sigma_cd's subsystems with
/// sigma_cd in operator norm. On success asserts that the channel to
/// `memory_output` is not entanglement breaking; on failure the report
/// carries verified = false and no such assertion.
CertReport deterministic_protocol_check(const Channel& N4, const DenseMatrix& sigma_cd,
                                        double tomo_tol = tol::kTomography,
                                        const std::string& memory_output = "D");

}  // namespace entbreak

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

// Quantum marginal extension problems.
//
// Given reduced states on subsets of a global layout, decide whether every
// global state with those marginals has an entangled two-qubit target
// marginal. The decision is the SDP
//
//   t* = max t  s.t.  eta >= 0,  tr_{not K} eta = rho_K for every constraint K,
//                     PT(tr_{not T} eta) - t I >= 0,
//
// and every extension is entangled on T iff t* < 0.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "entbreak/sdp.hpp"
#include "entbreak/tensor.hpp"

namespace entbreak {

namespace tol {
inline constexpr double kMarginalAgreement = 1e-10;
inline constexpr double kCertify = 1e-6;
inline constexpr double kCertificateResidual = 1e-8;
/// Marginal residual accepted for sampled extensions.
inline constexpr double kExtensionFeasibility = 1e-8;
}  // namespace tol

struct MarginalSpec {
  SubsystemLayout global_layout;
  /// Each constraint is a state on an ordered sub-layout of global_layout.
  std::vector<DenseMatrix> constraints;
  std::array<std::string, 2> target;

  /// Throws ValidationError for non-states or marginals that disagree on
  /// shared subsystems, LabelError for unknown labels and
  /// UnsupportedDimensionError unless the target is 2x2.
  void validate() const;

  /// Marginals of `global` on each label set in `keep`.
  static MarginalSpec from_state(const DenseMatrix& global,
                                 const std::vector<LabelList>& keep,
                                 std::array<std::string, 2> target);
};

/// Orthogonal Hermitian basis of n x n matrices: |i><i|, |i><j|+|j><i|,
/// i(|i><j|-|j><i|).
std::vector<CMatrix> hermitian_basis(int n);
/// n^2 - 1 independent traceless Hermitian matrices.
std::vector<CMatrix> traceless_hermitian_basis(int n);

/// Block 0 is eta (global dimension), block 1 is the 4x4 slack
/// S = PT(eta_T) - t I. The objective is t = (tr eta - tr S) / 4.
sdp::Problem build_extension_sdp(const MarginalSpec& spec);

struct Certification {
  double t_star = 0.0;
  /// Rigorous upper bound on t*: the dual objective corrected for any
  /// residual dual infeasibility.
  double dual_bound = 0.0;
  bool certified = false;
  sdp::Status status = sdp::Status::kMaxIters;
  sdp::CertificateReport certificate;
  int iterations = 0;
  /// Dimension of the subspace every extension is supported on; the solver
  /// works on this face.
  int support_dim = 0;
  int total_constraints = 0;
  int independent_constraints = 0;
  /// The optimal extension found by the solver.
  DenseMatrix extension;
  /// Constraint residual of `extension` in the unreduced problem.
  double full_primal_feasibility = 0.0;
};

/// Solves build_extension_sdp(spec) restricted to the support face of the
/// marginals. certified = solver converged, certificate residuals within 1e-8 and
/// dual_bound < -tol.
Certification certify_metatransitivity(const MarginalSpec& spec, double tol = tol::kCertify,
                                       const sdp::Options& options = {});

/// Global state with the spec's marginals (within kExtensionFeasibility)
/// approximately maximizing tr(W eta). Throws ValidationError when the
/// marginals admit no extension.
DenseMatrix extension_with_objective(const MarginalSpec& spec, const CMatrix& w);

/// extension_with_objective with a seeded Gaussian Hermitian W.
DenseMatrix random_extension(const MarginalSpec& spec, std::uint64_t seed);

/// Largest operator-norm distance between random extensions drawn with
/// seeds derived from `seed`; 0 when n_random < 2.
double uniqueness_probe(const MarginalSpec& spec, int n_random, std::uint64_t seed);

struct CandidateExample {
  /// Filtered rank-2 state with A-marginal I/2.
  DenseMatrix state;
  DenseMatrix rho_ab;
  DenseMatrix rho_ac;
  double min_pt_ab = 0.0;
  double min_pt_ac = 0.0;
  bool separable_marginals = false;
  /// Present when both marginals are separable.
  bool attempted_certification = false;
  Certification certification;
  bool certified = false;
};

/// Samples a random rank-2 three-qubit state (real amplitudes unless
/// `complex_amplitudes`), filters A to I/2 and, if the AB and AC marginals
/// are PPT, certifies metatransitivity in BC. Rank-deficient A-marginals are
/// resampled.
CandidateExample generate_candidate_example(std::uint64_t seed,
                                            bool complex_amplitudes = false);

}  // namespace entbreak

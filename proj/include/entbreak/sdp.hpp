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

// Small dense semidefinite programs over complex Hermitian block variables.
//
// Primal (maximize):  max  <c, X> + offset
//                     s.t. <A_i, X> = b_i,  X = diag(X_1, ..., X_k) >= 0
// Dual:               min  b^T y + offset
//                     s.t. Z = sum_i y_i A_i - c >= 0
//
// For Sense::kMinimize the roles flip: Z = c - sum_i y_i A_i and the dual
// objective is a lower bound. <A, X> = Re tr(A X). Every complex block of size
// n is solved as a real symmetric block of size 2n through the embedding
// A -> [[Re A, -Im A], [Im A, Re A]].

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "entbreak/tensor.hpp"

namespace entbreak::sdp {

enum class Sense { kMaximize, kMinimize };
enum class Status { kOptimal, kInfeasible, kMaxIters };

const char* to_string(Status status);

struct Constraint {
  /// One Hermitian coefficient per block; an empty matrix means zero.
  std::vector<CMatrix> coeffs;
  double rhs = 0.0;
};

struct Problem {
  std::vector<int> block_dims;
  Sense sense = Sense::kMaximize;
  /// One Hermitian matrix per block; an empty matrix means zero.
  std::vector<CMatrix> objective;
  double objective_offset = 0.0;
  std::vector<Constraint> constraints;
  /// A priori bound on sum_b tr X_b over the region where the dual bound is
  /// used; 0 when unknown. Turns an approximately feasible dual point into a
  /// bound that accounts for its infeasibility.
  double trace_bound = 0.0;

  /// Throws ValidationError on non-Hermitian data or mismatched shapes.
  void validate() const;

  int num_blocks() const { return static_cast<int>(block_dims.size()); }
  /// Real dimension of the variable space, sum_b n_b^2.
  int real_dimension() const;
  double objective_value(const std::vector<CMatrix>& x) const;
  /// <A_i, X> - b_i for every constraint.
  Eigen::VectorXd constraint_residual(const std::vector<CMatrix>& x) const;
};

struct Residuals {
  double primal_feasibility = 0.0;  // ||A(X) - b||_2 / (1 + ||b||_2)
  double dual_feasibility = 0.0;    // ||C - Z - A^*(y)||_F / (1 + ||C||_F)
  double gap = 0.0;  // max(|pobj - dobj|, <X,Z>) / (1 + |pobj| + |dobj|)
};

/// One interior-point iterate, objectives in the problem's own sense.
struct IterateRecord {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// Weak duality holds up to this amount: |<R_d, X>| + |y^T r_p|.
  double residual_slack = 0.0;
  double step_primal = 0.0;
  double step_dual = 0.0;
};

struct Solution {
  Status status = Status::kMaxIters;
  std::vector<CMatrix> primal;
  Eigen::VectorXd y;
  std::vector<CMatrix> dual_slack;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  Residuals residuals;
  int iterations = 0;
  int independent_constraints = 0;
  std::vector<IterateRecord> history;
};

struct Options {
  double tol_gap = 1e-7;
  double tol_feasibility = 1e-8;
  int max_iters = 100;
  double step_damping = 0.98;
  /// Norm beyond which a diverging iterate is reported as infeasible.
  double divergence_limit = 1e10;
};

Solution solve(const Problem& problem, const Options& options = {});

/// Residuals recomputed from the problem data in complex arithmetic,
/// independently of the solver's real-embedded iterates.
struct CertificateReport {
  double primal_feasibility = 0.0;  // ||A(X) - b||_2 / (1 + ||b||_2)
  double primal_min_eig = 0.0;
  double dual_min_eig = 0.0;        // of the recomputed Z(y)
  double dual_feasibility = 0.0;    // max(0, -dual_min_eig)
  double slack_mismatch = 0.0;      // max |Z_solver - Z(y)|
  double gap = 0.0;                 // |pobj - dobj| / (1 + |pobj| + |dobj|)
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// Dual objective corrected for dual infeasibility using trace_bound; a
  /// valid bound on the primal optimum over the trace-bounded region.
  double rigorous_bound = 0.0;

  bool passed(double tol_feasibility = 1e-8, double tol_gap = 1e-7) const;
};

CertificateReport verify_certificate(const Problem& problem, const Solution& solution);

/// Real symmetric embedding of a Hermitian matrix and its inverse. recover()
/// averages the two copies, so it is also the projection onto embedded matrices.
Eigen::MatrixXd embed_hermitian(const CMatrix& m);
CMatrix recover_hermitian(const Eigen::MatrixXd& m);

}  // namespace entbreak::sdp

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

// Quantum channels in the Choi representation.
//
// The Choi state of N with input dimension d is
//   J = (id (x) N)(|Phi+><Phi+|),  |Phi+> = sum_n |nn> / sqrt(d),
// and the channel acts as N(X) = d * tr_in[(X^T (x) I) J], with the
// transpose taken in the computational basis.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "entbreak/tensor.hpp"

namespace entbreak {

namespace tol {
inline constexpr double kChoiPsd = 1e-10;
inline constexpr double kChoiTrace = 1e-12;
inline constexpr double kTracePreserving = 1e-10;
inline constexpr double kFilterBound = 1e-10;
inline constexpr double kPptSeparable = 1e-9;
}  // namespace tol

class Channel {
 public:
  /// The first subsystem of the Choi layout is the input reference; the
  /// remaining subsystems are the outputs. Throws ValidationError naming the
  /// violated invariant.
  explicit Channel(DenseMatrix choi);

  const DenseMatrix& choi() const { return choi_; }
  int dim_in() const { return choi_.layout.dims().front(); }
  const std::string& input_label() const { return choi_.layout.labels().front(); }
  LabelList out_labels() const;
  SubsystemLayout output_layout() const;

 private:
  DenseMatrix choi_;
};

/// A single Kraus operator K with K^dag K <= I. `kraus` is
/// out_layout.total_dim() x in_layout.total_dim(); an empty out_layout means
/// the filter maps onto scalars.
class FilterOp {
 public:
  FilterOp(CMatrix kraus, SubsystemLayout in_layout, SubsystemLayout out_layout);

  const CMatrix& kraus() const { return kraus_; }
  const SubsystemLayout& in_layout() const { return in_; }
  const SubsystemLayout& out_layout() const { return out_; }

  /// Largest eigenvalue of K^dag K.
  double norm_bound() const;

  /// Unnormalized (K (x) I) rho (K (x) I)^dag. The input subsystems of rho are
  /// replaced by the output subsystems at the position of the first input.
  DenseMatrix apply(const DenseMatrix& rho) const;
  double success_probability(const DenseMatrix& rho) const;

 private:
  CMatrix kraus_;
  SubsystemLayout in_, out_;
};

using LinearMap = std::function<DenseMatrix(const DenseMatrix&)>;

StateVector maximally_entangled(int d, const LabelList& labels = {"A", "A'"});

/// (id (x) f)(|Phi+><Phi+|) with the reference copy labeled `reference`.
DenseMatrix choi_of_channel(const LinearMap& f, int d_in,
                            const std::string& reference = "R");

/// Validates J as a Choi state whose first subsystem has dimension d_in.
Channel channel_from_choi(DenseMatrix choi, int d_in);

/// Channel whose Choi state is `state` after the local input filter
/// (d rho_in)^{-1/2}, which makes the input marginal exactly I/d. Intended for
/// states that satisfy the marginal condition up to solver residuals; throws
/// ValidationError when the input marginal is farther than `max_correction`
/// from I/d.
Channel channel_from_state(const DenseMatrix& state, double max_correction = 1e-6);

DenseMatrix apply(const Channel& ch, const DenseMatrix& rho_in);

/// Choi marginal on the kept outputs: (tr_rest o N).
Channel marginal_channel(const Channel& ch, const LabelList& keep);

struct PptVerdict {
  bool entanglement_breaking = false;
  double min_pt_eig = 0.0;
};

/// Qubit-to-qubit channels only, where PPT of the Choi state is equivalent to
/// separability.
PptVerdict is_entanglement_breaking_qubit(const Channel& ch,
                                          double threshold = tol::kPptSeparable);

/// Kraus operators from the scaled eigenvectors of the Choi state.
std::vector<FilterOp> kraus_from_choi(const Channel& ch);

/// sum_k K_k rho K_k^dag.
DenseMatrix apply_kraus(const std::vector<FilterOp>& kraus, const DenseMatrix& rho);

/// Choi state of the map generated by a Kraus family.
DenseMatrix choi_of_kraus(const std::vector<FilterOp>& kraus,
                          const std::string& reference = "R");

/// || sum_k K_k^dag K_k - I ||_max
double completeness_error(const std::vector<FilterOp>& kraus);

}  // namespace entbreak

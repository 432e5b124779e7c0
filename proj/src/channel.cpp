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

#include "entbreak/channel.hpp"

#include <cmath>
#include <sstream>

namespace entbreak {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

CMatrix kron_identity(const CMatrix& k, Eigen::Index d_rest) {
  CMatrix out = CMatrix::Zero(k.rows() * d_rest, k.cols() * d_rest);
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      if (k(i, j) != Complex(0.0))
        out.block(i * d_rest, j * d_rest, d_rest, d_rest).diagonal().setConstant(k(i, j));
  return out;
}

}  // namespace

Channel::Channel(DenseMatrix choi) : choi_(std::move(choi)) {
  if (choi_.layout.size() < 1) throw ValidationError("Choi state has no input subsystem");
  const double herm = hermiticity_error(choi_);
  if (herm > tol::kHermitian)
    throw ValidationError("Choi state is not Hermitian (error " + fmt(herm) + ")");
  const double lmin = min_eigenvalue(choi_);
  if (lmin < -tol::kChoiPsd)
    throw ValidationError("Choi state is not PSD (min eigenvalue " + fmt(lmin) + ")");
  const double tr_err = std::abs(choi_.trace() - Complex(1.0));
  if (tr_err > tol::kChoiTrace)
    throw ValidationError("Choi state does not have unit trace (error " + fmt(tr_err) + ")");
  const DenseMatrix in_marginal = partial_trace(choi_, {input_label()});
  const double tp_err =
      (in_marginal.data - CMatrix::Identity(dim_in(), dim_in()) / double(dim_in()))
          .cwiseAbs()
          .maxCoeff();
  if (tp_err > tol::kTracePreserving)
    throw ValidationError("Choi input marginal is not I/d (not trace preserving, error " +
                          fmt(tp_err) + ")");
}

LabelList Channel::out_labels() const {
  return LabelList(choi_.layout.labels().begin() + 1, choi_.layout.labels().end());
}

SubsystemLayout Channel::output_layout() const {
  return choi_.layout.without({input_label()});
}

FilterOp::FilterOp(CMatrix kraus, SubsystemLayout in_layout, SubsystemLayout out_layout)
    : kraus_(std::move(kraus)), in_(std::move(in_layout)), out_(std::move(out_layout)) {
  if (kraus_.rows() != out_.total_dim() || kraus_.cols() != in_.total_dim())
    throw DimensionError("filter operator is " + std::to_string(kraus_.rows()) + "x" +
                         std::to_string(kraus_.cols()) + ", expected " +
                         std::to_string(out_.total_dim()) + "x" +
                         std::to_string(in_.total_dim()));
  const double bound = norm_bound();
  if (bound > 1.0 + tol::kFilterBound)
    throw ValidationError("filter violates K^dag K <= I (largest eigenvalue " +
                          std::to_string(bound) + ")");
}

double FilterOp::norm_bound() const {
  const CMatrix gram = kraus_.adjoint() * kraus_;
  return eig_hermitian<double>(hermitian_part<double>(gram)).values.maxCoeff();
}

DenseMatrix FilterOp::apply(const DenseMatrix& rho) const {
  for (const auto& l : in_.labels())
    if (rho.layout.dim_of(l) != in_.dim_of(l))
      throw DimensionError("filter input '" + l + "' dimension mismatch");
  const SubsystemLayout rest = rho.layout.without(in_.labels());
  LabelList order = in_.labels();
  order.insert(order.end(), rest.labels().begin(), rest.labels().end());
  const DenseMatrix ordered = permute_subsystems(rho, order);

  const CMatrix big = kron_identity(kraus_, rest.total_dim());
  DenseMatrix out(out_.concat(rest), big * ordered.data * big.adjoint());

  // Put the outputs where the first input used to be.
  LabelList target;
  bool placed = false;
  for (const auto& l : rho.layout.labels()) {
    if (in_.contains(l)) {
      if (!placed) target.insert(target.end(), out_.labels().begin(), out_.labels().end());
      placed = true;
    } else {
      target.push_back(l);
    }
  }
  return permute_subsystems(out, target);
}

double FilterOp::success_probability(const DenseMatrix& rho) const {
  return apply(rho).trace().real();
}

StateVector maximally_entangled(int d, const LabelList& labels) {
  if (d < 2) throw DimensionError("maximally_entangled: d must be >= 2");
  if (labels.size() != 2) throw LabelError("maximally_entangled: need two labels");
  CVector v = CVector::Zero(Eigen::Index(d) * d);
  for (int n = 0; n < d; ++n) v(Eigen::Index(n) * d + n) = 1.0 / std::sqrt(double(d));
  return {SubsystemLayout(labels, {d, d}), std::move(v)};
}

DenseMatrix choi_of_channel(const LinearMap& f, int d_in, const std::string& reference) {
  if (d_in < 2) throw DimensionError("choi_of_channel: d_in must be >= 2");
  const SubsystemLayout in_layout({reference}, {d_in});
  SubsystemLayout out_layout;
  CMatrix J;
  for (int a = 0; a < d_in; ++a) {
    for (int b = 0; b < d_in; ++b) {
      CMatrix unit = CMatrix::Zero(d_in, d_in);
      unit(a, b) = 1.0;
      const DenseMatrix image = f(DenseMatrix(in_layout, unit));
      if (a == 0 && b == 0) {
        out_layout = image.layout;
        J = CMatrix::Zero(d_in * image.dim(), d_in * image.dim());
      } else if (!(image.layout == out_layout)) {
        throw DimensionError("choi_of_channel: inconsistent output layouts");
      }
      J.block(a * image.dim(), b * image.dim(), image.dim(), image.dim()) =
          image.data / double(d_in);
    }
  }
  return {in_layout.concat(out_layout), std::move(J)};
}

Channel channel_from_choi(DenseMatrix choi, int d_in) {
  if (choi.layout.size() < 1 || choi.layout.dims().front() != d_in)
    throw ValidationError("Choi state input subsystem does not have dimension " +
                          std::to_string(d_in));
  return Channel(std::move(choi));
}

Channel channel_from_state(const DenseMatrix& state, double max_correction) {
  if (state.layout.size() < 2)
    throw ValidationError("channel_from_state: need an input and at least one output");
  const std::string& in = state.layout.labels().front();
  const int d = state.layout.dims().front();
  DenseMatrix rho_in = partial_trace(state, {in});
  rho_in.data = hermitian_part<double>(rho_in.data);
  const double dev =
      (rho_in.data - CMatrix::Identity(d, d) / double(d)).cwiseAbs().maxCoeff();
  if (dev > max_correction)
    throw ValidationError("channel_from_state: input marginal is " + fmt(dev) +
                          " away from I/d");
  DenseMatrix scaled = rho_in;
  scaled.data *= double(d);
  const DenseMatrix f = psd_pinv_sqrt(scaled);
  const FilterOp filter(f.data / std::max(1.0, std::sqrt(op_norm_inf(
                                               DenseMatrix(f.layout, f.data * f.data)))),
                        f.layout, f.layout);
  DenseMatrix out = filter.apply(state);
  out.data = hermitian_part<double>(out.data);
  out.data /= out.trace().real();
  return Channel(std::move(out));
}

DenseMatrix apply(const Channel& ch, const DenseMatrix& rho_in) {
  const int d = ch.dim_in();
  if (rho_in.dim() != d)
    throw DimensionError("apply: input has dimension " + std::to_string(rho_in.dim()) +
                         ", channel expects " + std::to_string(d));
  const SubsystemLayout out_layout = ch.output_layout();
  const Eigen::Index dout = out_layout.total_dim();
  const CMatrix& J = ch.choi().data;
  CMatrix out = CMatrix::Zero(dout, dout);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (rho_in.data(a, b) != Complex(0.0))
        out += rho_in.data(a, b) * J.block(a * dout, b * dout, dout, dout);
  return {out_layout, out * double(d)};
}

Channel marginal_channel(const Channel& ch, const LabelList& keep) {
  for (const auto& l : keep) {
    if (l == ch.input_label() || !ch.choi().layout.contains(l))
      throw LabelError("marginal_channel: '" + l + "' is not an output of the channel");
  }
  LabelList labels{ch.input_label()};
  labels.insert(labels.end(), keep.begin(), keep.end());
  return Channel(partial_trace(ch.choi(), labels));
}

PptVerdict is_entanglement_breaking_qubit(const Channel& ch, double threshold) {
  const auto out = ch.output_layout();
  if (ch.dim_in() != 2 || out.size() != 1 || out.total_dim() != 2)
    throw UnsupportedDimensionError(
        "PPT decides separability only for qubit-to-qubit channels here; got " +
        ch.choi().layout.to_string());
  const double lmin = min_pt_eigenvalue(ch.choi(), out.labels().front());
  return {lmin >= -threshold, lmin};
}

std::vector<FilterOp> kraus_from_choi(const Channel& ch) {
  const int d = ch.dim_in();
  const SubsystemLayout in_layout({ch.input_label()}, {d});
  const SubsystemLayout out_layout = ch.output_layout();
  const Eigen::Index dout = out_layout.total_dim();
  const auto eig = eig_hermitian(ch.choi());
  const double cutoff = 1e-15 * std::max(1.0, eig.values.cwiseAbs().maxCoeff());
  std::vector<FilterOp> ops;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    const double lambda = eig.values(k);
    if (lambda <= cutoff) continue;
    CMatrix K(dout, d);
    for (int a = 0; a < d; ++a)
      for (Eigen::Index o = 0; o < dout; ++o)
        K(o, a) = std::sqrt(d * lambda) * eig.vectors(a * dout + o, k);
    ops.emplace_back(std::move(K), in_layout, out_layout);
  }
  return ops;
}

DenseMatrix apply_kraus(const std::vector<FilterOp>& kraus, const DenseMatrix& rho) {
  if (kraus.empty()) throw ValidationError("apply_kraus: empty Kraus family");
  DenseMatrix out = kraus.front().apply(rho);
  for (std::size_t k = 1; k < kraus.size(); ++k) out.data += kraus[k].apply(rho).data;
  return out;
}

DenseMatrix choi_of_kraus(const std::vector<FilterOp>& kraus, const std::string& reference) {
  if (kraus.empty()) throw ValidationError("choi_of_kraus: empty Kraus family");
  const auto d = kraus.front().in_layout().total_dim();
  const SubsystemLayout& out_layout = kraus.front().out_layout();
  const auto dout = out_layout.total_dim();
  CMatrix J = CMatrix::Zero(d * dout, d * dout);
  for (const auto& op : kraus) {
    CVector w(d * dout);
    for (Eigen::Index a = 0; a < d; ++a)
      for (Eigen::Index o = 0; o < dout; ++o) w(a * dout + o) = op.kraus()(o, a);
    J += w * w.adjoint();
  }
  J /= double(d);
  return {SubsystemLayout({reference}, {int(d)}).concat(out_layout), std::move(J)};
}

double completeness_error(const std::vector<FilterOp>& kraus) {
  if (kraus.empty()) return 1.0;
  const auto d = kraus.front().in_layout().total_dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& op : kraus) sum += op.kraus().adjoint() * op.kraus();
  return (sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

}  // namespace entbreak

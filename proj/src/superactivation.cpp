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

#include "entbreak/superactivation.hpp"

#include <cmath>
#include <limits>

#include "entbreak/reference_states.hpp"

namespace entbreak {
namespace {

void require_qubit_to_qubit(const Channel& E) {
  const auto out = E.output_layout();
  if (E.dim_in() != 2 || out.size() != 1 || out.total_dim() != 2)
    throw UnsupportedDimensionError("expected a qubit-to-qubit channel, got Choi layout " +
                                    E.choi().layout.to_string());
}

DenseMatrix half_identity_image(const Channel& E) {
  DenseMatrix out = apply(E, DenseMatrix::maximally_mixed(SubsystemLayout({"in"}, {E.dim_in()})));
  out.data = hermitian_part<double>(out.data);
  return out;
}

std::string output_label(const Channel& E) { return E.output_layout().labels().front(); }

}  // namespace

double alpha_of(const Channel& E) {
  require_qubit_to_qubit(E);
  return min_eigenvalue(half_identity_image(E));
}

FilterOp filter_L(const Channel& E) {
  const double alpha = alpha_of(E);
  if (alpha <= tol::kRank)
    throw ValidationError("filter_L: E(I/2) is rank deficient (smallest eigenvalue " +
                          std::to_string(alpha) + ")");
  const DenseMatrix inv_sqrt = psd_pinv_sqrt(half_identity_image(E));
  const SubsystemLayout b = E.output_layout();
  return {std::sqrt(alpha) * inv_sqrt.data, b, b};
}

FilterOp filter_K(const Channel& E) {
  const FilterOp L = filter_L(E);
  const std::string& b = output_label(E);
  if (b == kFreshInput)
    throw LabelError("filter_K: channel output must not be labeled '" + std::string(kFreshInput) + "'");
  const StateVector phi = maximally_entangled(2, {kFreshInput, b});
  CMatrix id_l = CMatrix::Zero(4, 4);
  id_l.topLeftCorner(2, 2) = L.kraus();
  id_l.bottomRightCorner(2, 2) = L.kraus();
  return {phi.data.adjoint() * id_l, phi.layout, SubsystemLayout()};
}

Pipeline make_pipeline(const Channel& N, const std::string& step2_output) {
  const std::string b = step2_output.empty() ? N.out_labels().front() : step2_output;
  Channel E = marginal_channel(N, {b});
  const double alpha = alpha_of(E);
  FilterOp L = filter_L(E);
  FilterOp K = filter_K(E);
  return Pipeline{N, std::move(E), alpha, std::move(L), std::move(K)};
}

void check_realization(const Channel& N, const Channel& E) {
  require_qubit_to_qubit(E);
  const std::string& b = output_label(E);
  if (!N.choi().layout.contains(b) || b == N.input_label())
    throw ValidationError("realization has no output '" + b + "'");
  if (N.dim_in() != E.dim_in())
    throw ValidationError("realization and channel have different input dimensions");
  const DenseMatrix marginal = partial_trace(N.choi(), {N.input_label(), b});
  const double err = (marginal.data - E.choi().data).cwiseAbs().maxCoeff();
  if (err > tol::kRealizationMatch)
    throw ValidationError("realization marginal on '" + b + "' differs from the channel by " +
                          std::to_string(err));
}

LinearMap superactivated_action(const Channel& N, const Channel& E) {
  check_realization(N, E);
  const FilterOp K = filter_K(E);
  const double p_succ = alpha_of(E) / 2.0;
  const DenseMatrix rho_bc = half_identity_image(N);
  return [K, p_succ, rho_bc](const DenseMatrix& tau) {
    if (tau.dim() != 2) throw DimensionError("M acts on a qubit");
    const DenseMatrix input(SubsystemLayout::qubits({kFreshInput}), tau.data);
    DenseMatrix out = K.apply(tensor_product(input, rho_bc));
    out.data /= p_succ;
    return out;
  };
}

Channel superactivated_map(const Channel& N, const Channel& E) {
  const LinearMap action = superactivated_action(N, E);
  return Channel(choi_of_channel(action, 2, output_label(E)));
}

DenseMatrix m_choi(const Channel& N, const Channel& E) {
  check_realization(N, E);
  const FilterOp L = filter_L(E);
  const double alpha = alpha_of(E);
  DenseMatrix out = L.apply(half_identity_image(N));
  out.data = hermitian_part<double>(out.data) / (2.0 * alpha);
  return out;
}

std::vector<FilterOp> kraus_gamma(const DenseMatrix& rho_bc) {
  if (rho_bc.layout.size() != 2 || rho_bc.layout.dims()[0] != 2)
    throw DimensionError("kraus_gamma: expected a state on [B, C] with B a qubit");
  const std::string& b = rho_bc.layout.labels()[0];
  const std::string& c = rho_bc.layout.labels()[1];
  const int dc = rho_bc.layout.dims()[1];
  const DenseMatrix rho_b = partial_trace(rho_bc, {b});
  if (min_eigenvalue(rho_b) <= tol::kRank)
    throw ValidationError("kraus_gamma: rho_B is rank deficient");
  const CMatrix r = psd_pinv_sqrt(rho_b).data;
  const auto eig = eig_hermitian(rho_bc);
  const double cutoff = tol::kRank * std::max(1.0, eig.values.maxCoeff());

  const SubsystemLayout in = SubsystemLayout::qubits({kFreshInput});
  const SubsystemLayout out({c}, {dc});
  std::vector<FilterOp> ops;
  for (Eigen::Index j = eig.values.size() - 1; j >= 0; --j) {
    const double lambda = eig.values(j);
    if (lambda <= cutoff) continue;
    CMatrix gamma = CMatrix::Zero(dc, 2);
    for (int a = 0; a < 2; ++a)
      for (int cc = 0; cc < dc; ++cc) {
        Complex s = 0.0;
        for (int bb = 0; bb < 2; ++bb) s += r(a, bb) * eig.vectors(bb * dc + cc, j);
        gamma(cc, a) = std::sqrt(2.0 * lambda) * s / std::sqrt(2.0);
      }
    ops.emplace_back(std::move(gamma), in, out);
  }
  return ops;
}

CertReport verify_fact1(const Channel& N, const Channel& E) {
  const DenseMatrix J = m_choi(N, E);
  const std::string& b = output_label(E);
  const std::string& c = J.layout.labels()[1];
  const double lmin = min_pt_eigenvalue(J, c);

  CertReport rep;
  rep.suite = "fact1";
  rep.add({"fact1_choi_entangled",
           "Choi state of the super-activated map has a negative partial-transpose eigenvalue",
           {{"min_pt_eig", lmin}},
           -tol::kEntangled,
           Provenance::kPaper,
           lmin < -tol::kEntangled});

  // sqrt(E(I/2)) L = sqrt(alpha) I, so the filter undoes Step 2.
  const DenseMatrix rho_b = half_identity_image(E);
  const FilterOp inverse(psd_sqrt(rho_b).data, E.output_layout(), E.output_layout());
  const DenseMatrix recovered = inverse.apply(J);
  const double succ = recovered.trace().real();
  const DenseMatrix rho_bc = half_identity_image(N);
  const double err = (recovered.data / succ - relabel(rho_bc, J.layout.labels()).data)
                         .cwiseAbs()
                         .maxCoeff();
  const double succ_err = std::abs(succ - 0.5);
  rep.add({"fact1_recovery",
           "inverse filter on " + b + " recovers N(I/2) with probability 1/2",
           {{"success_probability", succ}, {"state_error", err}},
           1e-10,
           Provenance::kPaper,
           err <= 1e-10 && succ_err <= 1e-10});
  rep.data["alpha"] = alpha_of(E);
  rep.data["min_pt_eig"] = lmin;
  return rep;
}

double output_min_pt(const Channel& ch, double phi, double z) {
  const auto out = ch.output_layout();
  if (ch.dim_in() != 2 || out.size() != 2 || out.total_dim() != 4)
    throw UnsupportedDimensionError("output_min_pt: expected a channel from a qubit to two qubits");
  const StateVector xi = states::xi_input(phi, z);
  return min_pt_eigenvalue(apply(ch, projector(xi)), out.labels()[1]);
}

std::vector<SweepPoint> sweep_output_entanglement(int grid_n) {
  return sweep_output_entanglement(states::broadcast_channel(), grid_n);
}

std::vector<SweepPoint> sweep_output_entanglement(const Channel& ch, int grid_n) {
  if (grid_n < 2) throw ValidationError("sweep grid must have at least 2 points per axis");
  std::vector<SweepPoint> out;
  out.reserve(std::size_t(grid_n) * std::size_t(grid_n));
  const double h = 1.0 / (grid_n - 1);
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const double z = i * h, phi = j * h;
      out.push_back({z, phi, output_min_pt(ch, phi, z)});
    }
  return out;
}

SweepPoint max_along_z(const Channel& ch, double z, int grid_n) {
  if (grid_n < 2) throw ValidationError("max_along_z: need at least 2 samples");
  const double h = 1.0 / (grid_n - 1);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_n; ++j) {
    const double v = output_min_pt(ch, j * h, z);
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  auto f = [&](double phi) { return output_min_pt(ch, phi, z); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best - 1) * h, hi = (best + 1) * h;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-13) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = f(x1);
    }
  }
  SweepPoint p{z, best * h, best_value};
  const double mid = 0.5 * (lo + hi);
  const double v = f(mid);
  if (v > p.min_pt_eig) p = {z, mid - std::floor(mid), v};
  return p;
}

CertReport deterministic_protocol_check(const Channel& N4, const DenseMatrix& sigma_cd,
                                        double tomo_tol, const std::string& memory_output) {
  const LabelList labels = sigma_cd.layout.labels();
  const DenseMatrix observed = partial_trace(N4.choi(), labels);
  if (observed.dim() != sigma_cd.dim())
    throw DimensionError("protocol check: reference state has the wrong dimension");
  const double dist = spectral_norm<double>(observed.data - sigma_cd.data);
  const bool verified = dist <= tomo_tol;

  CertReport rep;
  rep.suite = "deterministic_protocol";
  rep.add({"protocol_verification",
           "CD Choi marginal matches the reference state",
           {{"distance", dist}},
           tomo_tol,
           Provenance::kDerived,
           verified});
  rep.data["verified"] = verified;
  if (verified) {
    const std::string& d = memory_output;
    const Channel to_d = marginal_channel(N4, {d});
    const PptVerdict verdict = is_entanglement_breaking_qubit(to_d, tol::kEntangled);
    rep.add({"protocol_memory",
             "channel " + N4.input_label() + "->" + d + " is not entanglement breaking",
             {{"min_pt_eig", verdict.min_pt_eig}},
             -tol::kEntangled,
             Provenance::kPaper,
             verdict.min_pt_eig < -tol::kEntangled});
    rep.data["min_pt_eig"] = verdict.min_pt_eig;
  }
  return rep;
}

}  // namespace entbreak

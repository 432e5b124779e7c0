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

#include "entbreak/reference_states.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace entbreak::states {
namespace {

const SubsystemLayout& abc() {
  static const SubsystemLayout layout = SubsystemLayout::qubits({"A", "B", "C"});
  return layout;
}

// Index of a three-qubit ket written as "abc".
constexpr int ket(const char (&bits)[4]) {
  return (bits[0] - '0') * 4 + (bits[1] - '0') * 2 + (bits[2] - '0');
}

// |000>+|001>-|110>-|111> weighted by `outer`, |010>+|011>-|100>-|101> by `inner`.
StateVector psi2_with(double outer, double inner) {
  CVector v = CVector::Zero(8);
  v(ket("000")) = outer;
  v(ket("001")) = outer;
  v(ket("110")) = -outer;
  v(ket("111")) = -outer;
  v(ket("010")) = inner;
  v(ket("011")) = inner;
  v(ket("100")) = -inner;
  v(ket("101")) = -inner;
  return {abc(), std::move(v)};
}

StateVector from_printed(const std::array<double, 16>& entries) {
  CVector v(16);
  for (int i = 0; i < 16; ++i) v(i) = entries[i];
  return {SubsystemLayout::qubits({"A", "B", "C", "D"}), std::move(v)};
}

}  // namespace

StateVector psi1() {
  CVector v = CVector::Zero(8);
  const double a = std::sqrt(3.0 / 20.0);
  const double b = std::sqrt(5.0 / 20.0);
  const double c = std::sqrt(2.0 / 20.0);
  v(ket("000")) = a;
  v(ket("111")) = a;
  v(ket("001")) = b;
  v(ket("110")) = b;
  v(ket("010")) = c;
  v(ket("101")) = c;
  return {abc(), std::move(v)};
}

StateVector psi2() {
  const double s15 = std::sqrt(15.0);
  return psi2_with(std::sqrt((5.0 + s15) / 40.0), std::sqrt((5.0 - s15) / 40.0));
}

DenseMatrix rho_abc() {
  DenseMatrix rho = projector(psi1());
  rho.data = 0.5 * rho.data + 0.5 * projector(psi2()).data;
  return rho;
}

FamilyParams FamilyParams::from_q(double q) {
  if (!(q >= 0.0 && q <= 1.0))
    throw ValidationError("family parameter q must lie in [0,1], got " + std::to_string(q));
  const double x_end = std::sqrt((std::sqrt(15.0) + 5.0) / 40.0);
  FamilyParams params;
  params.q = q;
  params.x = 4.0 / 9.0 + q * (x_end - 4.0 / 9.0);
  params.p = family_weight(params.x);
  return params;
}

double family_weight(double x) {
  const double w = 20.0 * x * std::sqrt(1.0 - 4.0 * x * x);
  return w / (w + std::sqrt(10.0));
}

StateVector psi2_x(double x) {
  if (!(x > 0.0 && x < 0.5))
    throw ValidationError("psi2_x: x must lie in (0, 1/2), got " + std::to_string(x));
  return psi2_with(x, std::sqrt(0.25 - x * x));
}

DenseMatrix rho_abc_family(double q) {
  const FamilyParams params = FamilyParams::from_q(q);
  DenseMatrix rho = projector(psi1());
  rho.data = params.p * rho.data + (1.0 - params.p) * projector(psi2_x(params.x)).data;
  return rho;
}

StateVector xi_input(double phi, double z) {
  using std::numbers::pi;
  CVector v(2);
  v(0) = std::cos(pi * z);
  v(1) = std::polar(1.0, 2.0 * pi * phi) * std::sin(pi * z);
  return {SubsystemLayout::qubits({"A"}), std::move(v)};
}

StateVector four_qubit_xi() {
  return from_printed({-0.363604630222339, -0.183197554926413, -0.025200310242453,
                       0.149346617141869, -0.079494890569652, -0.132591302906627,
                       0.536085654321419, -0.001772303428294, -0.103824670182399,
                       0.402460828845220, 0.164127761734534, 0.369092316612515,
                       -0.316910269589274, 0.149699898931402, -0.037303701231543,
                       0.199611908250895});
}

StateVector four_qubit_sigma() {
  return from_printed({-0.160057221360237, 0.322270395430589, -0.328980316910414,
                       -0.111816770092466, -0.056892698580869, -0.293250483010505,
                       -0.391416989542824, -0.085747037794833, 0.049130635230800,
                       -0.145050550461584, -0.356603598458560, 0.319315728013380,
                       0.147552818855805, -0.211389186550093, 0.116268220345477,
                       0.409197185104435});
}

Channel broadcast_channel() { return channel_from_choi(rho_abc(), 2); }
Channel channel_to_b() { return marginal_channel(broadcast_channel(), {"B"}); }
Channel channel_to_c() { return marginal_channel(broadcast_channel(), {"C"}); }

}  // namespace entbreak::states

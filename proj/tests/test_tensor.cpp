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

#include <doctest.h>

#include "entbreak/channel.hpp"
#include "entbreak/errors.hpp"
#include "entbreak/random.hpp"
#include "entbreak/reference_states.hpp"
#include "entbreak/tensor.hpp"
#include "oracle.hpp"

using namespace entbreak;

namespace {

DenseMatrix diag2(double a, double b, const std::string& label = "A") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return {SubsystemLayout::qubits({label}), m};
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("layout bookkeeping") {
  const SubsystemLayout l({"A", "B", "C"}, {2, 3, 2});
  CHECK(l.total_dim() == 12);
  CHECK(l.index_of("B") == 1);
  CHECK(l.stride(0) == 6);
  CHECK(l.stride(2) == 1);
  CHECK(l.select({"C", "A"}).labels() == LabelList{"A", "C"});
  CHECK(l.without({"B"}).total_dim() == 4);
  CHECK_THROWS_AS(l.index_of("Z"), LabelError);
  CHECK_THROWS_AS(SubsystemLayout({"A", "A"}, {2, 2}), LabelError);
  CHECK_THROWS_AS(SubsystemLayout({"A"}, {0}), DimensionError);
  CHECK_THROWS_AS(SubsystemLayout({"A", "B"}, {2}), DimensionError);
}

TEST_CASE("tensor product") {
  const auto a = SubsystemLayout::qubits({"A"});
  const auto b = SubsystemLayout::qubits({"B"});
  const DenseMatrix id = tensor_product(DenseMatrix::identity(a), DenseMatrix::identity(b));
  CHECK(max_abs(id.data - CMatrix::Identity(4, 4)) == 0.0);

  const DenseMatrix p = tensor_product(diag2(1, 0, "A"), diag2(0, 1, "B"));
  CMatrix expected = CMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  CHECK(max_abs(p.data - expected) == 0.0);
  CHECK(p.layout.labels() == LabelList{"A", "B"});

  CHECK_THROWS_AS(tensor_product(diag2(1, 0, "A"), diag2(1, 0, "A")), LabelError);
}

TEST_CASE("reference amplitudes survive the projector") {
  const DenseMatrix p = projector(states::psi1());
  CHECK(p.data(0, 7).real() == doctest::Approx(3.0 / 20.0).epsilon(1e-14));
}

TEST_CASE("partial trace") {
  const DenseMatrix rho = states::rho_abc();
  CHECK(max_abs(partial_trace(rho, {"A"}).data - CMatrix::Identity(2, 2) / 2.0) < 1e-12);

  const DenseMatrix phi = projector(maximally_entangled(2, {"A", "B"}));
  CHECK(max_abs(partial_trace(phi, {"A"}).data - CMatrix::Identity(2, 2) / 2.0) < 1e-15);

  Rng rng = make_rng(7);
  const DenseMatrix ra = random_density(SubsystemLayout::qubits({"A"}), rng);
  const DenseMatrix sb = random_density(SubsystemLayout({"B"}, {3}), rng);
  CHECK(max_abs(partial_trace(tensor_product(ra, sb), {"A"}).data - ra.data) < 1e-14);

  SUBCASE("agrees with the index oracle") {
    const CMatrix ab = partial_trace(rho, {"A", "B"}).data;
    CHECK(max_abs(ab - oracle::ptrace(rho.data, 3, {true, true, false})) < 1e-15);
    const CMatrix ac = partial_trace(rho, {"A", "C"}).data;
    CHECK(max_abs(ac - oracle::ptrace(rho.data, 3, {true, false, true})) < 1e-15);
  }

  SUBCASE("keep order is the layout order") {
    const DenseMatrix ca = partial_trace(rho, {"C", "A"});
    CHECK(ca.layout.labels() == LabelList{"A", "C"});
  }

  CHECK_THROWS_AS(partial_trace(rho, {}), LabelError);
  CHECK_THROWS_AS(partial_trace(rho, {"D"}), LabelError);
}

TEST_CASE("partial transpose") {
  Rng rng = make_rng(11);
  const DenseMatrix r = random_density(SubsystemLayout::qubits({"A"}), rng);
  const DenseMatrix s = random_density(SubsystemLayout::qubits({"B"}), rng);
  const DenseMatrix pt = partial_transpose(tensor_product(r, s), "B");
  DenseMatrix st = s;
  st.data.transposeInPlace();
  CHECK(max_abs(pt.data - tensor_product(r, st).data) < 1e-15);
  CHECK(min_eigenvalue(pt) >= -1e-14);

  const DenseMatrix phi = projector(maximally_entangled(2, {"A", "B"}));
  CHECK(min_pt_eigenvalue(phi, "B") == doctest::Approx(-0.5).epsilon(1e-14));

  const DenseMatrix rho = states::rho_abc();
  const double ac = min_pt_eigenvalue(partial_trace(rho, {"A", "C"}), "C");
  CHECK(std::abs(ac - 0.00206) <= 1e-5);
  const CMatrix ac_data = partial_trace(rho, {"A", "C"}).data;
  CHECK(std::abs(ac - oracle::min_eig(oracle::ptranspose(ac_data, 2, 1))) < 1e-12);

  CHECK_THROWS_AS(partial_transpose(phi, "C"), LabelError);
}

TEST_CASE("hermitian eigensolver") {
  const auto e = eig_hermitian(diag2(3, 1));
  CHECK(e.values(0) == doctest::Approx(1.0));
  CHECK(e.values(1) == doctest::Approx(3.0));

  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto ex = eig_hermitian<double>(x);
  CHECK(ex.values(0) == doctest::Approx(-1.0));
  CHECK(ex.values(1) == doctest::Approx(1.0));

  const DenseMatrix bc = partial_trace(states::rho_abc(), {"B", "C"});
  CHECK(std::abs(eig_hermitian(bc).values.sum() - 1.0) < 1e-12);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian<double>(bad), ValidationError);
}

TEST_CASE("psd functions") {
  const DenseMatrix id = DenseMatrix::identity(SubsystemLayout::qubits({"A"}));
  CHECK(max_abs(psd_sqrt(id).data - id.data) < 1e-15);

  const DenseMatrix p = psd_pinv_sqrt(diag2(4, 0));
  CHECK(max_abs(p.data - diag2(0.5, 0).data) < 1e-15);

  const DenseMatrix rho_b = partial_trace(states::rho_abc(), {"B"});
  const DenseMatrix s = psd_sqrt(rho_b);
  CHECK(max_abs(s.data * s.data - rho_b.data) <= 1e-12);
  CHECK(max_abs(s.data - oracle::sqrt_2x2(rho_b.data)) <= 1e-12);

  CHECK_NOTHROW(psd_sqrt(diag2(1, -5e-11)));
  CHECK_THROWS_AS(psd_sqrt(diag2(1, -1e-6)), ValidationError);
}

TEST_CASE("norms") {
  CHECK(op_norm_inf(DenseMatrix::maximally_mixed(SubsystemLayout::qubits({"A"}))) ==
        doctest::Approx(0.5));
  CHECK(op_norm_inf(diag2(0.7, 0.3)) == doctest::Approx(0.7));

  const DenseMatrix rho_b = states::channel_to_b().choi();
  const DenseMatrix e_half = partial_trace(rho_b, {"B"});
  const double alpha = oracle::min_eig_2x2(e_half.data);
  CHECK(op_norm_inf(e_half) == doctest::Approx(1.0 - alpha).epsilon(1e-12));
}

TEST_CASE("extend and permute") {
  const SubsystemLayout abc = SubsystemLayout::qubits({"A", "B", "C"});
  const DenseMatrix a = diag2(0.25, 0.75, "B");
  const DenseMatrix ext = extend_operator(a, abc);
  CHECK(ext.dim() == 8);
  CHECK(ext.trace().real() == doctest::Approx(4.0));

  Rng rng = make_rng(3);
  const DenseMatrix rho = random_density(abc, rng);
  const DenseMatrix back = permute_subsystems(permute_subsystems(rho, {"C", "A", "B"}), {"A", "B", "C"});
  CHECK(max_abs(back.data - rho.data) < 1e-15);
  CHECK_THROWS_AS(permute_subsystems(rho, {"A", "B"}), LabelError);
}

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

#include "entbreak/errors.hpp"
#include "entbreak/metatransitivity.hpp"
#include "entbreak/reference_states.hpp"
#include "oracle.hpp"

using namespace entbreak;

namespace {

// Found by scanning generate_candidate_example over seeds 1..3000.
constexpr std::uint64_t kCertifiedCandidateSeed = 169;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

MarginalSpec reference_spec() {
  return MarginalSpec::from_state(states::rho_abc(), {{"A", "B"}, {"A", "C"}}, {"B", "C"});
}

MarginalSpec product_spec() {
  const DenseMatrix mixed = DenseMatrix::maximally_mixed(SubsystemLayout::qubits({"A", "B", "C"}));
  return MarginalSpec::from_state(mixed, {{"A", "B"}, {"A", "C"}}, {"B", "C"});
}

MarginalSpec case_b_spec() {
  const StateVector s = states::four_qubit_sigma();
  return MarginalSpec::from_state(projector(s), {{"A", "B"}, {"A", "C"}, {"C", "D"}}, {"A", "D"});
}

double bc_min_pt(const DenseMatrix& eta) {
  return oracle::min_eig(oracle::ptranspose(oracle::ptrace(eta.data, 3, {false, true, true}), 2, 1));
}

}  // namespace

TEST_CASE("hermitian bases") {
  const auto basis = hermitian_basis(3);
  CHECK(basis.size() == 9);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double ip = (basis[i].adjoint() * basis[j]).trace().real();
      if (i != j) CHECK(std::abs(ip) < 1e-15);
    }
  const auto traceless = traceless_hermitian_basis(4);
  CHECK(traceless.size() == 15);
  for (const auto& f : traceless) CHECK(std::abs(f.trace()) < 1e-15);
}

TEST_CASE("extension sdp layout") {
  const sdp::Problem p = build_extension_sdp(reference_spec());
  CHECK(p.block_dims == std::vector<int>{8, 4});
  CHECK(p.constraints.size() == 2 * 16 + 15);
  CHECK(p.trace_bound == 4.0);

  // rho_ABC with S = PT(rho_BC) - t I is feasible with objective t.
  const DenseMatrix rho = states::rho_abc();
  const CMatrix pt = oracle::ptranspose(oracle::ptrace(rho.data, 3, {false, true, true}), 2, 1);
  const double t = oracle::min_eig(pt);
  const CMatrix s = pt - t * CMatrix::Identity(4, 4);
  CHECK(p.constraint_residual({rho.data, s}).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(p.objective_value({rho.data, s}) == doctest::Approx(t).epsilon(1e-12));

  CHECK(build_extension_sdp(case_b_spec()).block_dims == std::vector<int>{16, 4});
}

TEST_CASE("reference BC marginal is certified") {
  const Certification c = certify_metatransitivity(reference_spec());
  CHECK(c.status == sdp::Status::kOptimal);
  CHECK(c.certified);
  CHECK(c.t_star < 0.0);
  CHECK(c.dual_bound < -1e-6);
  CHECK(c.certificate.passed(1e-8));
  CHECK(c.full_primal_feasibility < 1e-8);
  MESSAGE("t* = " << c.t_star << ", dual bound = " << c.dual_bound << ", independent constraints "
                  << c.independent_constraints << " of " << c.total_constraints);
  // The dual bound dominates the value of the known extension.
  CHECK(c.dual_bound >= bc_min_pt(states::rho_abc()) - 1e-8);
}

TEST_CASE("product marginals are not certified") {
  const Certification c = certify_metatransitivity(product_spec());
  CHECK_FALSE(c.certified);
  CHECK(c.t_star >= 0.0);
  CHECK(c.t_star == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("spec validation") {
  const DenseMatrix rho = states::rho_abc();
  CHECK_THROWS_AS(MarginalSpec::from_state(rho, {{"A", "B"}}, {"B", "B"}).validate(), LabelError);
  CHECK_THROWS_AS(MarginalSpec::from_state(rho, {{"A", "D"}}, {"B", "C"}), LabelError);

  // Pure marginals that disagree on A.
  MarginalSpec bad = reference_spec();
  CMatrix p00 = CMatrix::Zero(4, 4);
  p00(0, 0) = 1.0;
  CMatrix p10 = CMatrix::Zero(4, 4);
  p10(2, 2) = 1.0;
  bad.constraints[0].data = p00;
  bad.constraints[1].data = p10;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  CHECK_THROWS_AS(certify_metatransitivity(bad), ValidationError);

  MarginalSpec qutrit;
  qutrit.global_layout = SubsystemLayout({"A", "B", "C"}, {2, 3, 2});
  qutrit.constraints = {DenseMatrix::maximally_mixed(SubsystemLayout({"A", "B"}, {2, 3}))};
  qutrit.target = {"B", "C"};
  CHECK_THROWS_AS(qutrit.validate(), UnsupportedDimensionError);
}

TEST_CASE("random extensions") {
  const DenseMatrix eta = random_extension(reference_spec(), 1);
  const DenseMatrix rho = states::rho_abc();
  CHECK(max_abs(partial_trace(eta, {"A", "B"}).data - partial_trace(rho, {"A", "B"}).data) <= 1e-8);
  CHECK(bc_min_pt(eta) < 0.0);

  const DenseMatrix prod = random_extension(product_spec(), 2);
  const CMatrix quarter = CMatrix::Identity(4, 4) / 4.0;
  CHECK(max_abs(partial_trace(prod, {"A", "B"}).data - quarter) <= 1e-8);
  CHECK(max_abs(partial_trace(prod, {"A", "C"}).data - quarter) <= 1e-8);
  CHECK(min_eigenvalue(prod) >= -1e-10);

  const DenseMatrix other = random_extension(reference_spec(), 2);
  MESSAGE("distance between two reference-spec extensions: "
          << spectral_norm<double>(eta.data - other.data));
}

TEST_CASE("uniqueness probe") {
  const double spread = uniqueness_probe(reference_spec(), 8, 5);
  MESSAGE("reference-spec spread over 8 extensions: " << spread);
  CHECK(spread < 1e-6);
  CHECK(uniqueness_probe(product_spec(), 2, 5) >= 0.1);
  CHECK(uniqueness_probe(reference_spec(), 1, 5) == 0.0);
}

TEST_CASE("candidate generator") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CandidateExample c = generate_candidate_example(seed);
    CHECK(max_abs(partial_trace(c.state, {"A"}).data - CMatrix::Identity(2, 2) / 2.0) <= 1e-10);
    CHECK(max_abs(partial_trace(c.rho_ab, {"A"}).data - partial_trace(c.rho_ac, {"A"}).data) <= 1e-12);
    CHECK(c.attempted_certification == c.separable_marginals);
  }
  const CandidateExample found = generate_candidate_example(kCertifiedCandidateSeed);
  CHECK(found.separable_marginals);
  CHECK(found.certified);
  CHECK(found.certification.dual_bound < -1e-6);
  CHECK(found.min_pt_ab >= -1e-9);
  CHECK(found.min_pt_ac >= -1e-9);
}

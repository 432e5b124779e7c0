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
#include "entbreak/random.hpp"
#include "entbreak/reference_states.hpp"
#include "entbreak/superactivation.hpp"
#include "entbreak/suites.hpp"
#include "oracle.hpp"

using namespace entbreak;

namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Channel qubit_channel(const CMatrix& choi) {
  return Channel(DenseMatrix(SubsystemLayout::qubits({"A", "B"}), choi));
}

Channel depolarizing() { return qubit_channel(CMatrix::Identity(4, 4) / 4.0); }

// Replacement channel X -> tr(X) diag(a, 1 - a).
Channel replacement(double a) {
  CMatrix choi = CMatrix::Zero(4, 4);
  for (int k : {0, 2}) {
    choi(k, k) = a / 2.0;
    choi(k + 1, k + 1) = (1.0 - a) / 2.0;
  }
  return qubit_channel(choi);
}

Channel seeded_realization(std::uint64_t seed) {
  return channel_from_state(random_extension(observation_spec(states::rho_abc()), seed));
}

const SubsystemLayout& fresh() {
  static const SubsystemLayout l = SubsystemLayout::qubits({"A"});
  return l;
}

}  // namespace

TEST_CASE("alpha") {
  CHECK(alpha_of(depolarizing()) == doctest::Approx(0.5));
  CHECK(alpha_of(replacement(0.9)) == doctest::Approx(0.1));
  const double alpha = alpha_of(states::channel_to_b());
  const CMatrix rho_b = oracle::ptrace(states::rho_abc().data, 3, {false, true, false});
  CHECK(alpha > 0.0);
  CHECK(alpha <= 0.5);
  CHECK(std::abs(alpha - oracle::min_eig_2x2(rho_b)) < 1e-14);
  MESSAGE("alpha = " << alpha);
  CHECK_THROWS_AS(alpha_of(states::broadcast_channel()), UnsupportedDimensionError);
}

TEST_CASE("step 2 filter") {
  const FilterOp l_dep = filter_L(depolarizing());
  CHECK(max_abs(l_dep.kraus() - CMatrix::Identity(2, 2)) < 1e-14);

  const Channel E = states::channel_to_b();
  const FilterOp L = filter_L(E);
  const double alpha = alpha_of(E);
  const DenseMatrix e_half = partial_trace(E.choi(), {"B"});
  CHECK(max_abs(L.kraus() * e_half.data * L.kraus().adjoint() - alpha * CMatrix::Identity(2, 2)) <
        1e-14);
  const DenseMatrix rho_bc = partial_trace(states::rho_abc(), {"B", "C"});
  CHECK(std::abs(L.success_probability(rho_bc) - 2.0 * alpha) <= 1e-10);
  CHECK_THROWS_AS(filter_L(replacement(1.0)), ValidationError);
}

TEST_CASE("step 3 filter") {
  const FilterOp K = filter_K(depolarizing());
  CHECK(max_abs(K.kraus().adjoint() * K.kraus() -
                projector(maximally_entangled(2, {"A", "B"})).data) < 1e-14);
  Rng rng = make_rng(2);
  const DenseMatrix half = DenseMatrix::maximally_mixed(SubsystemLayout::qubits({"B"}));
  for (int k = 0; k < 5; ++k) {
    const DenseMatrix tau = random_density(fresh(), rng);
    CHECK(K.success_probability(tensor_product(tau, half)) == doctest::Approx(0.25).epsilon(1e-14));
  }

  const Channel E = states::channel_to_b();
  const FilterOp K2 = filter_K(E);
  const double alpha = alpha_of(E);
  const DenseMatrix e_half = partial_trace(E.choi(), {"B"});
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double p = K2.success_probability(tensor_product(random_density(fresh(), rng), e_half));
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(std::abs(lo - alpha / 2.0) < 1e-12);
  CHECK(std::abs(hi - alpha / 2.0) < 1e-12);
  CHECK(filter_K(E).kraus() == filter_K(states::channel_to_b()).kraus());
}

TEST_CASE("super-activated map") {
  const Channel N = states::broadcast_channel();
  const Channel E = states::channel_to_b();
  const LinearMap M = superactivated_action(N, E);
  Rng rng = make_rng(4);
  for (int k = 0; k < 20; ++k) {
    const DenseMatrix out = M(random_density(fresh(), rng));
    CHECK(std::abs(out.trace().real() - 1.0) < 1e-12);
  }

  const DenseMatrix J = m_choi(N, E);
  CHECK(max_abs(J.data - oracle::m_choi(states::rho_abc().data)) <= 1e-12);
  CHECK(max_abs(superactivated_map(N, E).choi().data - J.data) <= 1e-12);
  CHECK(std::abs(J.trace().real() - 1.0) < 1e-12);
  CHECK(min_eigenvalue(J) >= -1e-12);

  const double lmin = min_pt_eigenvalue(J, "C");
  CHECK(lmin < -1e-6);
  MESSAGE("min PT eigenvalue of the canonical Choi state: " << lmin);

  // Not asserted: the printed matrix is not reproduced (see README).
  MESSAGE("max deviation from the printed matrix: " << max_abs(J.data - printed_m_choi()));
}

TEST_CASE("kraus decomposition") {
  const DenseMatrix rho = states::rho_abc();
  const DenseMatrix rho_bc = partial_trace(rho, {"B", "C"});
  const auto gammas = kraus_gamma(rho_bc);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho_bc.data);
  int rank = 0;
  for (int k = 0; k < 4; ++k) rank += es.eigenvalues()(k) > 1e-9;
  CHECK(int(gammas.size()) == rank);
  CHECK(completeness_error(gammas) <= 1e-10);

  const DenseMatrix J = m_choi(states::broadcast_channel(), states::channel_to_b());
  CHECK(max_abs(choi_of_kraus(gammas, "B").data - J.data) <= 1e-10);

  CHECK_THROWS_AS(kraus_gamma(rho), DimensionError);
}

TEST_CASE("fact 1") {
  const CertReport canonical = verify_fact1(states::broadcast_channel(), states::channel_to_b());
  CHECK(canonical.passed());

  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Channel N = seeded_realization(seed);
    const Channel E = marginal_channel(N, {"B"});
    const CertReport r = verify_fact1(N, E);
    CHECK_MESSAGE(r.passed(), "seed " << seed);
  }

  // I/2 (x) I/4 does not realize the B channel of the reference state.
  const Channel product(DenseMatrix::maximally_mixed(SubsystemLayout::qubits({"A", "B", "C"})));
  CHECK_THROWS_AS(verify_fact1(product, states::channel_to_b()), ValidationError);
  CHECK_THROWS_AS(check_realization(product, states::channel_to_b()), ValidationError);
}

TEST_CASE("output sweep") {
  const Channel N = states::broadcast_channel();
  const auto grid = sweep_output_entanglement(N, 11);
  CHECK(grid.size() == 121);
  CHECK(grid[1].z == 0.0);
  CHECK(grid[1].phi == doctest::Approx(0.1));
  CHECK(grid[11].z == doctest::Approx(0.1));

  const DenseMatrix out = apply(N, projector(states::xi_input(0.2, 0.3)));
  const double oracle_value = oracle::min_eig(oracle::ptranspose(out.data, 2, 1));
  CHECK(std::abs(output_min_pt(N, 0.2, 0.3) - oracle_value) < 1e-12);

  for (double z : {0.25, 0.75}) {
    const SweepPoint p = max_along_z(N, z, 101);
    CHECK(std::abs(p.min_pt_eig) <= 1e-6);
  }
  CHECK(max_along_z(N, 0.5, 101).min_pt_eig < -1e-6);
  CHECK_THROWS_AS(sweep_output_entanglement(N, 1), ValidationError);
  CHECK_THROWS_AS(output_min_pt(states::channel_to_b(), 0.0, 0.0), UnsupportedDimensionError);
}

TEST_CASE("deterministic protocol") {
  const StateVector s = states::four_qubit_sigma();
  const DenseMatrix sigma = projector(s);
  const DenseMatrix sigma_cd = partial_trace(sigma, {"C", "D"});
  const CertReport ok = deterministic_protocol_check(channel_from_state(sigma), sigma_cd);
  CHECK(ok.passed());
  CHECK(ok.data["verified"].get<bool>());
  CHECK(ok.find("protocol_memory").values["min_pt_eig"].get<double>() < -1e-6);

  const MarginalSpec spec = MarginalSpec::from_state(sigma, {{"A", "B"}, {"A", "C"}, {"C", "D"}},
                                                     {"A", "D"});
  const CertReport ext = deterministic_protocol_check(channel_from_state(random_extension(spec, 3)),
                                                      sigma_cd);
  CHECK(ext.passed());

  const MarginalSpec loose = MarginalSpec::from_state(sigma, {{"A", "B"}, {"A", "C"}}, {"A", "D"});
  const CMatrix w = -extend_operator(sigma_cd, sigma.layout).data;
  const CertReport control =
      deterministic_protocol_check(channel_from_state(extension_with_objective(loose, w)), sigma_cd);
  CHECK_FALSE(control.data["verified"].get<bool>());
  CHECK_FALSE(control.has("protocol_memory"));
}

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

#include <sstream>

#include <doctest.h>

#include "entbreak/errors.hpp"
#include "entbreak/metatransitivity.hpp"
#include "entbreak/reference_states.hpp"
#include "entbreak/sdp.hpp"
#include "entbreak/sdp_io.hpp"

using namespace entbreak;

namespace {

// min <diag(0.7, 0.3), X> s.t. tr X = 1; the dual is max t s.t. diag(0.7, 0.3) >= t I.
sdp::Problem diag_problem() {
  sdp::Problem p;
  p.block_dims = {2};
  p.sense = sdp::Sense::kMinimize;
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 0) = 0.7;
  c(1, 1) = 0.3;
  p.objective = {c};
  p.constraints.push_back({{CMatrix::Identity(2, 2)}, 1.0});
  p.trace_bound = 1.0;
  return p;
}

// tr X = 1 and X_00 = 2 force X_11 = -1.
sdp::Problem infeasible_problem() {
  sdp::Problem p = diag_problem();
  CMatrix e = CMatrix::Zero(2, 2);
  e(0, 0) = 1.0;
  p.constraints.push_back({{e}, 2.0});
  return p;
}

// A two-block problem with a complex coupling.
sdp::Problem mixed_problem() {
  sdp::Problem p;
  p.block_dims = {2, 1};
  p.sense = sdp::Sense::kMaximize;
  CMatrix c = CMatrix::Zero(2, 2);
  c(0, 1) = Complex(0.0, 1.0);
  c(1, 0) = Complex(0.0, -1.0);
  p.objective = {c, CMatrix::Constant(1, 1, -1.0)};
  p.constraints.push_back({{CMatrix::Identity(2, 2), CMatrix::Constant(1, 1, 1.0)}, 1.0});
  p.objective_offset = 0.25;
  return p;
}

}  // namespace

TEST_CASE("scalar diagonal sdp") {
  const sdp::Solution sol = sdp::solve(diag_problem());
  REQUIRE(sol.status == sdp::Status::kOptimal);
  CHECK(sol.primal_objective == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(sol.dual_objective == doctest::Approx(0.3).epsilon(1e-8));
  const auto cert = sdp::verify_certificate(diag_problem(), sol);
  CHECK(cert.primal_feasibility < 1e-12);
  CHECK(cert.dual_feasibility < 1e-12);
  CHECK(cert.slack_mismatch < 1e-12);
  CHECK(cert.gap < 1e-8);
  CHECK(cert.passed());
}

TEST_CASE("complex two-block sdp") {
  // The first objective block is -sigma_y, whose largest eigenvalue is 1.
  const sdp::Solution sol = sdp::solve(mixed_problem());
  REQUIRE(sol.status == sdp::Status::kOptimal);
  CHECK(sol.primal_objective == doctest::Approx(1.25).epsilon(1e-7));
  CHECK(sdp::verify_certificate(mixed_problem(), sol).passed());
}

TEST_CASE("infeasible sdp") {
  const sdp::Solution sol = sdp::solve(infeasible_problem());
  CHECK(sol.status == sdp::Status::kInfeasible);
}

TEST_CASE("tampered dual is flagged") {
  const sdp::Problem p = diag_problem();
  sdp::Solution sol = sdp::solve(p);
  REQUIRE(sdp::verify_certificate(p, sol).passed());
  sol.y(0) += 1e-3;
  const auto cert = sdp::verify_certificate(p, sol);
  CHECK(cert.dual_feasibility > 1e-8);
  CHECK_FALSE(cert.passed());
  // The rigorous bound stays a valid lower bound on the minimum.
  CHECK(cert.rigorous_bound <= 0.3 + 1e-9);
}

TEST_CASE("problem validation") {
  sdp::Problem p = diag_problem();
  p.constraints[0].coeffs[0](0, 1) = 1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  sdp::Problem q = diag_problem();
  q.constraints[0].coeffs[0] = CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(q.validate(), ValidationError);
}

TEST_CASE("weak duality along the iterates") {
  const MarginalSpec spec = MarginalSpec::from_state(states::rho_abc(), {{"A", "B"}, {"A", "C"}},
                                                     {"B", "C"});
  for (const sdp::Problem& p : {diag_problem(), mixed_problem(), build_extension_sdp(spec)}) {
    const sdp::Solution sol = sdp::solve(p);
    REQUIRE_FALSE(sol.history.empty());
    for (const auto& rec : sol.history) {
      const double excess = p.sense == sdp::Sense::kMaximize
                                ? rec.primal_objective - rec.dual_objective
                                : rec.dual_objective - rec.primal_objective;
      CHECK(excess <= rec.residual_slack + 1e-9);
    }
  }
}

TEST_CASE("determinism") {
  const MarginalSpec spec = MarginalSpec::from_state(states::rho_abc(), {{"A", "B"}, {"A", "C"}},
                                                     {"B", "C"});
  const sdp::Problem p = build_extension_sdp(spec);
  const sdp::Solution a = sdp::solve(p);
  const sdp::Solution b = sdp::solve(p);
  CHECK(a.iterations == b.iterations);
  CHECK(a.primal_objective == b.primal_objective);
  CHECK(a.y == b.y);
}

TEST_CASE("exchange format round trip") {
  const MarginalSpec spec = MarginalSpec::from_state(states::rho_abc(), {{"A", "B"}, {"A", "C"}},
                                                     {"B", "C"});
  for (const sdp::Problem& p : {diag_problem(), mixed_problem(), build_extension_sdp(spec)}) {
    std::stringstream ss;
    sdp::write_problem(ss, p);
    const std::string first = ss.str();
    const sdp::Problem q = sdp::read_problem(ss);
    CHECK(q.block_dims == p.block_dims);
    CHECK(q.sense == p.sense);
    CHECK(q.constraints.size() == p.constraints.size());
    CHECK(q.trace_bound == p.trace_bound);
    CHECK(q.objective_offset == p.objective_offset);
    std::stringstream again;
    sdp::write_problem(again, q);
    CHECK(again.str() == first);
    CHECK(sdp::solve(q).primal_objective == sdp::solve(p).primal_objective);
  }

  std::istringstream bad("entbreak-sdp 2\n");
  CHECK_THROWS_AS(sdp::read_problem(bad), ValidationError);
  std::istringstream truncated("entbreak-sdp 1\nsense max\nblocks 1 2\n");
  CHECK_THROWS_AS(sdp::read_problem(truncated), ValidationError);
  CHECK_THROWS_AS(sdp::load_problem("/nonexistent/entbreak.sdp"), Error);
}

TEST_CASE("real embedding") {
  CMatrix m(2, 2);
  m << 1.0, Complex(0.5, -0.25), Complex(0.5, 0.25), 2.0;
  const Eigen::MatrixXd e = sdp::embed_hermitian(m);
  CHECK(e.rows() == 4);
  CHECK((e - e.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sdp::recover_hermitian(e) - m).cwiseAbs().maxCoeff() == 0.0);
}

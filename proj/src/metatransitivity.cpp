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

#include "entbreak/metatransitivity.hpp"

#include <cmath>
#include <limits>

#include "entbreak/channel.hpp"
#include "entbreak/random.hpp"

namespace entbreak {
namespace {

// The smallest eigenvalue of a 2x2 partial transpose is at least -1/2, so
// every extension with t >= -1/2 has tr eta + tr S = 2 - 4t <= 4.
constexpr double kTraceBound = 4.0;

constexpr std::uint64_t kCandidateStream = 0x63616e646964ULL;

void append_marginal_constraints(const MarginalSpec& spec, int n_blocks,
                                 std::vector<sdp::Constraint>& out) {
  for (const auto& rho : spec.constraints) {
    for (const CMatrix& e : hermitian_basis(static_cast<int>(rho.dim()))) {
      sdp::Constraint c;
      c.coeffs.assign(n_blocks, CMatrix());
      c.coeffs[0] = extend_operator(DenseMatrix(rho.layout, e), spec.global_layout).data;
      c.rhs = (e * rho.data).trace().real();
      out.push_back(std::move(c));
    }
  }
}

// Every extension is supported on the intersection of supp(rho_K) (x) H_rest
// over the constraints. Returns an isometry onto that subspace.
CMatrix support_isometry(const MarginalSpec& spec) {
  const auto n = spec.global_layout.total_dim();
  CMatrix kernel_sum = CMatrix::Zero(n, n);
  for (const auto& rho : spec.constraints) {
    const auto eig = eig_hermitian(rho);
    const double cutoff = tol::kRank * std::max(1.0, eig.values.maxCoeff());
    CMatrix proj = CMatrix::Zero(rho.dim(), rho.dim());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
      if (eig.values(k) <= cutoff) proj += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    kernel_sum += extend_operator(DenseMatrix(rho.layout, proj), spec.global_layout).data;
  }
  const auto eig = eig_hermitian<double>(kernel_sum);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k)
    if (eig.values(k) <= 0.5) keep.push_back(k);
  CMatrix v(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(Eigen::Index(c)) = eig.vectors.col(keep[c]);
  return v;
}

// Isometry onto the eigenvectors of x above 1e-8 of its largest eigenvalue.
CMatrix range_isometry(const CMatrix& x) {
  const auto eig = eig_hermitian<double>(hermitian_part<double>(x));
  const double cutoff = 1e-6 * std::max(eig.values.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    if (eig.values(k) > cutoff) keep.push_back(k);
  CMatrix r(x.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) r.col(Eigen::Index(c)) = eig.vectors.col(keep[c]);
  return r;
}

// The same problem with block 0 written as V X V^dag.
sdp::Problem restrict_first_block(const sdp::Problem& p, const CMatrix& v) {
  sdp::Problem out = p;
  out.block_dims[0] = static_cast<int>(v.cols());
  auto restrict = [&v](const CMatrix& m) {
    return m.size() ? hermitian_part<double>(CMatrix(v.adjoint() * m * v)) : CMatrix();
  };
  out.objective[0] = restrict(p.objective[0]);
  for (auto& c : out.constraints) c.coeffs[0] = restrict(c.coeffs[0]);
  return out;
}

sdp::Problem marginal_problem(const MarginalSpec& spec, const CMatrix& w) {
  sdp::Problem p;
  p.block_dims = {static_cast<int>(spec.global_layout.total_dim())};
  p.sense = sdp::Sense::kMaximize;
  p.objective = {w};
  append_marginal_constraints(spec, 1, p.constraints);
  return p;
}

// Gauss-Newton on eta = F F^dag toward the constraints of the first block.
// Minimal-norm steps keep F close to the starting factor.
CMatrix polish_factor(const sdp::Problem& p, CMatrix f) {
  const auto m = static_cast<Eigen::Index>(p.constraints.size());
  const Eigen::Index len = f.size();
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) b(i) = p.constraints[std::size_t(i)].rhs;
  const double scale = 1.0 + b.norm();
  for (int it = 0; it < 20; ++it) {
    Eigen::MatrixXd jac(m, 2 * len);
    Eigen::VectorXd r(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const CMatrix& a = p.constraints[std::size_t(i)].coeffs[0];
      const CMatrix af = a * f;
      r(i) = b(i) - (f.adjoint() * af).trace().real();
      const Eigen::Map<const CVector> col(af.data(), len);
      jac.row(i) << 2.0 * col.real().transpose(), 2.0 * col.imag().transpose();
    }
    if (r.norm() <= 1e-14 * scale) break;
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(r);
    Eigen::Map<CVector>(f.data(), len) +=
        step.head(len).cast<Complex>() + Complex(0.0, 1.0) * step.tail(len).cast<Complex>();
  }
  return f;
}

}  // namespace

void MarginalSpec::validate() const {
  if (constraints.empty()) throw ValidationError("marginal spec has no constraints");
  for (const auto& rho : constraints) {
    const SubsystemLayout sub = global_layout.select(rho.layout.labels());
    if (!(sub == rho.layout))
      throw LabelError("constraint layout " + rho.layout.to_string() +
                       " is not an ordered sub-layout of " + global_layout.to_string());
    if (hermiticity_error(rho) > tol::kHermitian)
      throw ValidationError("constraint on " + rho.layout.to_string() + " is not Hermitian");
    if (std::abs(rho.trace() - Complex(1.0)) > tol::kMarginalAgreement)
      throw ValidationError("constraint on " + rho.layout.to_string() + " does not have unit trace");
    if (min_eigenvalue(rho) < -tol::kPsdClip)
      throw ValidationError("constraint on " + rho.layout.to_string() + " is not PSD");
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      LabelList shared;
      for (const auto& l : constraints[i].layout.labels())
        if (constraints[j].layout.contains(l)) shared.push_back(l);
      if (shared.empty()) continue;
      const auto a = partial_trace(constraints[i], shared);
      const auto b = partial_trace(constraints[j], shared);
      const double err = (a.data - b.data).cwiseAbs().maxCoeff();
      if (err > tol::kMarginalAgreement)
        throw ValidationError("constraints on " + constraints[i].layout.to_string() + " and " +
                              constraints[j].layout.to_string() +
                              " disagree on their shared marginal (error " +
                              std::to_string(err) + ")");
    }
  }
  if (target[0] == target[1]) throw LabelError("target labels must differ");
  for (const auto& l : target) {
    if (global_layout.dim_of(l) != 2)
      throw UnsupportedDimensionError("target subsystem '" + l +
                                      "' is not a qubit; only 2x2 targets are decidable by PPT");
  }
}

MarginalSpec MarginalSpec::from_state(const DenseMatrix& global,
                                      const std::vector<LabelList>& keep,
                                      std::array<std::string, 2> target) {
  MarginalSpec spec;
  spec.global_layout = global.layout;
  const double tr = global.trace().real();
  for (const auto& labels : keep) {
    DenseMatrix rho = partial_trace(global, labels);
    rho.data = hermitian_part<double>(rho.data) / tr;
    spec.constraints.push_back(std::move(rho));
  }
  spec.target = std::move(target);
  return spec;
}

std::vector<CMatrix> hermitian_basis(int n) {
  std::vector<CMatrix> out;
  for (int i = 0; i < n; ++i) {
    CMatrix d = CMatrix::Zero(n, n);
    d(i, i) = 1.0;
    out.push_back(d);
    for (int j = i + 1; j < n; ++j) {
      CMatrix s = CMatrix::Zero(n, n);
      s(i, j) = s(j, i) = 1.0;
      out.push_back(s);
      CMatrix a = CMatrix::Zero(n, n);
      a(i, j) = Complex(0.0, 1.0);
      a(j, i) = Complex(0.0, -1.0);
      out.push_back(a);
    }
  }
  return out;
}

std::vector<CMatrix> traceless_hermitian_basis(int n) {
  std::vector<CMatrix> out;
  for (const CMatrix& m : hermitian_basis(n))
    if (std::abs(m.trace()) == 0.0) out.push_back(m);
  for (int i = 0; i + 1 < n; ++i) {
    CMatrix d = CMatrix::Zero(n, n);
    d(i, i) = 1.0;
    d(i + 1, i + 1) = -1.0;
    out.push_back(d);
  }
  return out;
}

sdp::Problem build_extension_sdp(const MarginalSpec& spec) {
  spec.validate();
  const int n = static_cast<int>(spec.global_layout.total_dim());
  const SubsystemLayout target = spec.global_layout.select({spec.target[0], spec.target[1]});
  const std::string& transposed = target.labels()[1];

  sdp::Problem p;
  p.block_dims = {n, 4};
  p.sense = sdp::Sense::kMaximize;
  p.objective = {CMatrix::Identity(n, n) / 4.0, -CMatrix::Identity(4, 4) / 4.0};
  p.trace_bound = kTraceBound;
  append_marginal_constraints(spec, 2, p.constraints);

  // S - PT(eta_T) is a multiple of the identity.
  for (const CMatrix& f : traceless_hermitian_basis(4)) {
    sdp::Constraint c;
    const DenseMatrix pt_f = partial_transpose(DenseMatrix(target, f), transposed);
    c.coeffs = {-extend_operator(pt_f, spec.global_layout).data, f};
    c.rhs = 0.0;
    p.constraints.push_back(std::move(c));
  }
  return p;
}

Certification certify_metatransitivity(const MarginalSpec& spec, double tol,
                                       const sdp::Options& options) {
  const sdp::Problem full = build_extension_sdp(spec);
  const CMatrix v = support_isometry(spec);
  const sdp::Problem problem = restrict_first_block(full, v);
  const sdp::Solution sol = sdp::solve(problem, options);
  Certification out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.support_dim = static_cast<int>(v.cols());
  out.total_constraints = static_cast<int>(problem.constraints.size());
  out.independent_constraints = sol.independent_constraints;
  out.t_star = sol.primal_objective;
  out.certificate = sdp::verify_certificate(problem, sol);
  out.dual_bound = out.certificate.rigorous_bound;
  out.extension = DenseMatrix(spec.global_layout,
                              hermitian_part<double>(CMatrix(v * sol.primal[0] * v.adjoint())));
  Eigen::VectorXd b(static_cast<Eigen::Index>(full.constraints.size()));
  for (std::size_t i = 0; i < full.constraints.size(); ++i) b(Eigen::Index(i)) = full.constraints[i].rhs;
  out.full_primal_feasibility =
      full.constraint_residual({out.extension.data, sol.primal[1]}).norm() / (1.0 + b.norm());
  out.certified = sol.status == sdp::Status::kOptimal &&
                  out.certificate.passed(tol::kCertificateResidual, options.tol_gap) &&
                  out.dual_bound < -tol;
  return out;
}

DenseMatrix extension_with_objective(const MarginalSpec& spec, const CMatrix& w) {
  spec.validate();
  const auto n = spec.global_layout.total_dim();
  if (w.rows() != n || w.cols() != n)
    throw DimensionError("extension objective must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  sdp::Options options;
  options.tol_feasibility = 1e-11;
  options.tol_gap = 1e-9;
  options.max_iters = 200;
  auto fail = [](sdp::Status status) {
    return ValidationError(std::string("marginals admit no extension (solver status ") +
                           sdp::to_string(status) + ")");
  };

  // The zero-objective solve approaches the analytic center, whose range is
  // the smallest face containing every extension. Repeat until the face is
  // stable; the center of a face without interior carries spurious small
  // eigenvalues.
  CMatrix v = support_isometry(spec);
  const sdp::Problem feasibility = marginal_problem(spec, CMatrix::Zero(n, n));
  CMatrix y0;
  for (int round = 0; round < 4; ++round) {
    sdp::Problem face = restrict_first_block(feasibility, v);
    if (round > 0)
      for (auto& c : face.constraints) c.rhs = (c.coeffs[0] * y0).trace().real();
    const sdp::Solution center = sdp::solve(face, options);
    if (center.status == sdp::Status::kInfeasible) throw fail(center.status);
    const CMatrix r = range_isometry(center.primal[0]);
    y0 = hermitian_part<double>(CMatrix(r.adjoint() * center.primal[0] * r));
    v = v * r;
    if (r.cols() == r.rows()) break;
  }

  const sdp::Problem full = marginal_problem(spec, hermitian_part<double>(w));
  sdp::Problem problem = restrict_first_block(full, v);
  // Truncating the center leaves the marginals off by the dropped weight.
  for (auto& c : problem.constraints) c.rhs = (c.coeffs[0] * y0).trace().real();
  const sdp::Solution sol = sdp::solve(problem, options);
  if (sol.status == sdp::Status::kInfeasible) throw fail(sol.status);

  // Interior-point iterates on a face without interior keep a residual well
  // above roundoff. Polish factors of the numerical range on the true
  // marginals, trying larger ranks until one is feasible.
  Eigen::VectorXd b(static_cast<Eigen::Index>(full.constraints.size()));
  for (std::size_t i = 0; i < full.constraints.size(); ++i) b(Eigen::Index(i)) = full.constraints[i].rhs;
  auto residual = [&](const CMatrix& f) {
    return full.constraint_residual({CMatrix(f * f.adjoint())}).norm() / (1.0 + b.norm());
  };
  const auto eig = eig_hermitian<double>(hermitian_part<double>(CMatrix(v * sol.primal[0] * v.adjoint())));
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  auto factor = [&](double cutoff) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k)
      if (eig.values(k) > cutoff * top) keep.push_back(k);
    CMatrix f(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      f.col(Eigen::Index(c)) = eig.vectors.col(keep[c]) * std::sqrt(eig.values(keep[c]));
    return f;
  };
  CMatrix best = factor(0.0);
  double best_residual = residual(best);
  for (double cutoff : {1e-6, 1e-9, 1e-12, 0.0}) {
    if (best_residual <= 0.01 * tol::kExtensionFeasibility) break;
    const CMatrix f = polish_factor(full, factor(cutoff));
    const double r = residual(f);
    if (r < best_residual) {
      best = f;
      best_residual = r;
    }
  }
  if (!(best_residual <= tol::kExtensionFeasibility)) throw fail(sol.status);
  return {spec.global_layout, hermitian_part<double>(CMatrix(best * best.adjoint()))};
}

DenseMatrix random_extension(const MarginalSpec& spec, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return extension_with_objective(spec, random_hermitian(spec.global_layout.total_dim(), rng));
}

double uniqueness_probe(const MarginalSpec& spec, int n_random, std::uint64_t seed) {
  std::vector<DenseMatrix> samples;
  for (int i = 0; i < n_random; ++i)
    samples.push_back(random_extension(spec, splitmix64(seed + std::uint64_t(i))));
  double spread = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      spread = std::max(spread, spectral_norm<double>(samples[i].data - samples[j].data));
  return spread;
}

CandidateExample generate_candidate_example(std::uint64_t seed, bool complex_amplitudes) {
  const SubsystemLayout abc = SubsystemLayout::qubits({"A", "B", "C"});
  Rng rng = make_rng(seed, kCandidateStream);
  CMatrix rho;
  CMatrix rho_a;
  for (;;) {
    const CMatrix g = complex_amplitudes ? random_gaussian(8, 2, rng)
                                         : random_real_gaussian(8, 2, rng);
    rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho_a = partial_trace(DenseMatrix(abc, rho), {"A"}).data;
    if (min_eigenvalue<double>(hermitian_part<double>(rho_a)) > tol::kRank) break;
  }
  // F = (2 rho_A)^{-1/2} maps the A-marginal to I/2.
  const DenseMatrix f = psd_pinv_sqrt(DenseMatrix(SubsystemLayout::qubits({"A"}),
                                                  2.0 * hermitian_part<double>(rho_a)));
  CMatrix big = CMatrix::Zero(8, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) big.block(4 * i, 4 * j, 4, 4).diagonal().setConstant(f.data(i, j));
  CMatrix filtered = hermitian_part<double>(CMatrix(big * rho * big.adjoint()));
  filtered /= filtered.trace().real();

  CandidateExample out;
  out.state = DenseMatrix(abc, filtered);
  out.rho_ab = partial_trace(out.state, {"A", "B"});
  out.rho_ac = partial_trace(out.state, {"A", "C"});
  out.min_pt_ab = min_pt_eigenvalue(out.rho_ab, "B");
  out.min_pt_ac = min_pt_eigenvalue(out.rho_ac, "C");
  out.separable_marginals =
      out.min_pt_ab >= -tol::kPptSeparable && out.min_pt_ac >= -tol::kPptSeparable;
  if (out.separable_marginals) {
    out.attempted_certification = true;
    out.certification = certify_metatransitivity(
        MarginalSpec::from_state(out.state, {{"A", "B"}, {"A", "C"}}, {"B", "C"}));
    out.certified = out.certification.certified;
  }
  return out;
}

}  // namespace entbreak

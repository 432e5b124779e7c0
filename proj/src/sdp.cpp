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

// Infeasible-start primal-dual path following on the real embedding with the
// HKM direction and a Mehrotra predictor-corrector.

#include "entbreak/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace entbreak::sdp {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
  return s;
}

double frobenius(const Blocks& a) { return std::sqrt(inner(a, a)); }

struct RealConstraint {
  Blocks coeffs;               // empty matrix for a zero block
  double rhs = 0.0;
};

struct EmbeddedProblem {
  std::vector<int> dims;       // real block sizes
  Blocks c;                    // internal objective, always minimized
  std::vector<RealConstraint> rows;
  VectorXd b;
};

// Real coordinates of a Hermitian matrix such that <A, X> = vec(A) . vec(X).
void append_hermitian_coords(const CMatrix& m, int n, std::vector<double>& out) {
  const double r2 = std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    out.push_back(m.size() ? m(i, i).real() : 0.0);
    for (int j = i + 1; j < n; ++j) {
      out.push_back(m.size() ? r2 * m(i, j).real() : 0.0);
      out.push_back(m.size() ? r2 * m(i, j).imag() : 0.0);
    }
  }
}

struct Presolve {
  std::vector<int> kept;
  bool consistent = true;
};

Presolve presolve(const Problem& p) {
  const int m = static_cast<int>(p.constraints.size());
  Presolve out;
  if (m == 0) return out;
  const int n_real = p.real_dimension();
  MatrixXd a(m, n_real);
  VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row;
    row.reserve(n_real);
    for (int k = 0; k < p.num_blocks(); ++k)
      append_hermitian_coords(p.constraints[i].coeffs[k], p.block_dims[k], row);
    a.row(i) = Eigen::Map<VectorXd>(row.data(), n_real).transpose();
    b(i) = p.constraints[i].rhs;
  }
  Eigen::ColPivHouseholderQR<MatrixXd> qr(a.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  for (int k = 0; k < rank; ++k) out.kept.push_back(qr.colsPermutation().indices()(k));
  std::sort(out.kept.begin(), out.kept.end());

  Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  const VectorXd x = cod.solve(b);
  out.consistent = (a * x - b).norm() <= 1e-9 * (1.0 + b.norm());
  return out;
}

EmbeddedProblem embed(const Problem& p, const std::vector<int>& kept) {
  EmbeddedProblem e;
  const double sign = p.sense == Sense::kMaximize ? -1.0 : 1.0;
  for (int k = 0; k < p.num_blocks(); ++k) {
    const int n = p.block_dims[k];
    e.dims.push_back(2 * n);
    const CMatrix& ck = p.objective[k];
    e.c.push_back(ck.size() ? MatrixXd(sign * 0.5 * embed_hermitian(ck))
                            : MatrixXd(MatrixXd::Zero(2 * n, 2 * n)));
  }
  e.b.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    const Constraint& con = p.constraints[kept[r]];
    RealConstraint rc;
    rc.rhs = con.rhs;
    for (int k = 0; k < p.num_blocks(); ++k) {
      const CMatrix& a = con.coeffs[k];
      if (a.size() && a.cwiseAbs().maxCoeff() > 0.0)
        rc.coeffs.push_back(0.5 * embed_hermitian(a));
      else
        rc.coeffs.emplace_back();
    }
    e.b(static_cast<Eigen::Index>(r)) = con.rhs;
    e.rows.push_back(std::move(rc));
  }
  return e;
}

VectorXd apply_a(const EmbeddedProblem& e, const Blocks& x) {
  VectorXd out(static_cast<Eigen::Index>(e.rows.size()));
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k)
      if (e.rows[i].coeffs[k].size()) s += e.rows[i].coeffs[k].cwiseProduct(x[k]).sum();
    out(static_cast<Eigen::Index>(i)) = s;
  }
  return out;
}

Blocks apply_a_adjoint(const EmbeddedProblem& e, const VectorXd& y) {
  Blocks out;
  for (int n : e.dims) out.push_back(MatrixXd::Zero(n, n));
  for (std::size_t i = 0; i < e.rows.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k)
      if (e.rows[i].coeffs[k].size())
        out[k] += y(static_cast<Eigen::Index>(i)) * e.rows[i].coeffs[k];
  return out;
}

// Largest t with X + t dX >= 0 (infinity when dX keeps X PSD).
double max_step(const MatrixXd& x, const MatrixXd& dx) {
  Eigen::LLT<MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd l = llt.matrixL();
  MatrixXd w = l.triangularView<Eigen::Lower>().solve(dx);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
  w = 0.5 * (w + w.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? kInf : -1.0 / lmin;
}

double max_step(const Blocks& x, const Blocks& dx) {
  double t = kInf;
  for (std::size_t k = 0; k < x.size(); ++k) t = std::min(t, max_step(x[k], dx[k]));
  return t;
}

Blocks symmetrize(Blocks m) {
  for (auto& b : m) b = 0.5 * (b + b.transpose()).eval();
  return m;
}

Blocks axpy(const Blocks& x, double t, const Blocks& dx) {
  Blocks out = x;
  for (std::size_t k = 0; k < x.size(); ++k) out[k] += t * dx[k];
  return out;
}

double min_eig(const Blocks& m) {
  double lmin = kInf;
  for (const auto& b : m) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (b + b.transpose()),
                                               Eigen::EigenvaluesOnly);
    lmin = std::min(lmin, es.eigenvalues()(0));
  }
  return lmin;
}

// Farkas ray for primal infeasibility: y with A^*y <= 0 (internal sense
// C - A^*y >= 0 stays feasible along y) and b^T y > 0.
bool primal_infeasibility_ray(const EmbeddedProblem& e, const VectorXd& u) {
  const double nu = u.norm();
  if (nu == 0.0) return false;
  const VectorXd v = u / nu;
  if (e.b.dot(v) <= 1e-8) return false;
  Blocks neg = apply_a_adjoint(e, -v);
  return min_eig(neg) >= -1e-7 * std::max(1.0, e.b.dot(v));
}

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kMaxIters: return "max_iters";
  }
  return "unknown";
}

Eigen::MatrixXd embed_hermitian(const CMatrix& m) {
  const auto n = m.rows();
  MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = m.real();
  out.topRightCorner(n, n) = -m.imag();
  out.bottomLeftCorner(n, n) = m.imag();
  out.bottomRightCorner(n, n) = m.real();
  return out;
}

CMatrix recover_hermitian(const Eigen::MatrixXd& m) {
  const auto n = m.rows() / 2;
  const MatrixXd re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  const MatrixXd im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  CMatrix out(n, n);
  out.real() = re;
  out.imag() = im;
  return hermitian_part<double>(out);
}

void Problem::validate() const {
  const int k = num_blocks();
  if (k == 0) throw ValidationError("SDP has no variable blocks");
  for (int d : block_dims)
    if (d < 1) throw ValidationError("SDP block dimension must be positive");
  auto check = [&](const std::vector<CMatrix>& mats, const std::string& what) {
    if (static_cast<int>(mats.size()) != k)
      throw ValidationError(what + ": expected one matrix per block");
    for (int b = 0; b < k; ++b) {
      if (mats[b].size() == 0) continue;
      if (mats[b].rows() != block_dims[b] || mats[b].cols() != block_dims[b])
        throw ValidationError(what + ": block " + std::to_string(b) + " has wrong shape");
      const double scale = std::max(1.0, mats[b].cwiseAbs().maxCoeff());
      if (hermiticity_error<double>(mats[b]) > tol::kHermitian * scale)
        throw ValidationError(what + ": block " + std::to_string(b) + " is not Hermitian");
    }
  };
  check(objective, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i)
    check(constraints[i].coeffs, "constraint " + std::to_string(i));
}

int Problem::real_dimension() const {
  int n = 0;
  for (int d : block_dims) n += d * d;
  return n;
}

double Problem::objective_value(const std::vector<CMatrix>& x) const {
  double s = objective_offset;
  for (int b = 0; b < num_blocks(); ++b)
    if (objective[b].size()) s += (objective[b] * x[b]).trace().real();
  return s;
}

Eigen::VectorXd Problem::constraint_residual(const std::vector<CMatrix>& x) const {
  VectorXd r(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    double s = -constraints[i].rhs;
    for (int b = 0; b < num_blocks(); ++b)
      if (constraints[i].coeffs[b].size())
        s += (constraints[i].coeffs[b] * x[b]).trace().real();
    r(static_cast<Eigen::Index>(i)) = s;
  }
  return r;
}

Solution solve(const Problem& problem, const Options& options) {
  problem.validate();
  Solution sol;
  const int m_full = static_cast<int>(problem.constraints.size());
  sol.y = VectorXd::Zero(m_full);

  const Presolve pre = presolve(problem);
  sol.independent_constraints = static_cast<int>(pre.kept.size());
  const EmbeddedProblem e = embed(problem, pre.kept);
  const int m = static_cast<int>(e.rows.size());
  int n_total = 0;
  for (int n : e.dims) n_total += n;

  Blocks x, z;
  for (int n : e.dims) {
    x.push_back(MatrixXd::Identity(n, n));
    z.push_back(MatrixXd::Identity(n, n));
  }
  VectorXd u = VectorXd::Zero(m);

  const double norm_b = e.b.norm();
  const double norm_c = frobenius(e.c);
  const bool maximize = problem.sense == Sense::kMaximize;
  auto user_obj = [&](double internal) {
    return (maximize ? -internal : internal) + problem.objective_offset;
  };

  auto finish = [&](Status status) {
    sol.status = status;
    sol.primal.clear();
    sol.dual_slack.clear();
    for (std::size_t k = 0; k < x.size(); ++k) {
      sol.primal.push_back(recover_hermitian(x[k]));
      sol.dual_slack.push_back(2.0 * recover_hermitian(z[k]));
    }
    for (int r = 0; r < m; ++r) sol.y(pre.kept[r]) = maximize ? -u(r) : u(r);
    return sol;
  };

  if (!pre.consistent) return finish(Status::kInfeasible);

  for (int it = 0; it <= options.max_iters; ++it) {
    const VectorXd rp = e.b - apply_a(e, x);
    const Blocks aty = apply_a_adjoint(e, u);
    Blocks rd = e.c;
    for (std::size_t k = 0; k < rd.size(); ++k) rd[k] -= z[k] + aty[k];
    const double pobj = inner(e.c, x);
    const double dobj = e.b.dot(u);
    const double xz = inner(x, z);
    const double mu = xz / n_total;

    sol.residuals.primal_feasibility = rp.norm() / (1.0 + norm_b);
    sol.residuals.dual_feasibility = frobenius(rd) / (1.0 + norm_c);
    sol.residuals.gap =
        std::max(std::abs(pobj - dobj), xz) / (1.0 + std::abs(pobj) + std::abs(dobj));
    sol.primal_objective = user_obj(pobj);
    sol.dual_objective = user_obj(dobj);
    sol.iterations = it;

    IterateRecord rec;
    rec.iteration = it;
    rec.primal_objective = sol.primal_objective;
    rec.dual_objective = sol.dual_objective;
    rec.residual_slack = std::abs(inner(rd, x)) + std::abs(u.dot(rp));
    if (!sol.history.empty()) {
      rec.step_primal = sol.history.back().step_primal;
      rec.step_dual = sol.history.back().step_dual;
    }
    sol.history.push_back(rec);

    if (sol.residuals.primal_feasibility <= options.tol_feasibility &&
        sol.residuals.dual_feasibility <= options.tol_feasibility &&
        sol.residuals.gap <= options.tol_gap)
      return finish(Status::kOptimal);

    if (u.norm() > 1e6 && primal_infeasibility_ray(e, u)) return finish(Status::kInfeasible);
    if (frobenius(x) > options.divergence_limit || u.norm() > options.divergence_limit)
      return finish(Status::kInfeasible);
    if (it == options.max_iters) break;

    Blocks zinv;
    for (const auto& zk : z) {
      Eigen::LLT<MatrixXd> llt(zk);
      if (llt.info() != Eigen::Success) return finish(Status::kMaxIters);
      zinv.push_back(llt.solve(MatrixXd::Identity(zk.rows(), zk.cols())));
    }

    // Schur complement M_ij = <A_i, X A_j Z^{-1}>.
    std::vector<Blocks> g(m);
    for (int j = 0; j < m; ++j)
      for (std::size_t k = 0; k < x.size(); ++k)
        g[j].push_back(e.rows[j].coeffs[k].size()
                           ? MatrixXd(x[k] * e.rows[j].coeffs[k] * zinv[k])
                           : MatrixXd());
    MatrixXd schur(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k)
          if (g[j][k].size() && e.rows[i].coeffs[k].size())
            s += e.rows[i].coeffs[k].cwiseProduct(g[j][k]).sum();
        schur(i, j) = s;
      }
    schur = 0.5 * (schur + schur.transpose()).eval();
    Eigen::LDLT<MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) return finish(Status::kMaxIters);

    Blocks x_rd_zinv;
    for (std::size_t k = 0; k < x.size(); ++k) x_rd_zinv.push_back(x[k] * rd[k] * zinv[k]);
    const VectorXd a_x_rd_zinv = apply_a(e, x_rd_zinv);

    // target: sigma*mu*Z^{-1} - X - (second-order term) Z^{-1}
    auto direction = [&](const Blocks& target, VectorXd& du, Blocks& dx, Blocks& dz) {
      du = ldlt.solve(rp - apply_a(e, target) + a_x_rd_zinv);
      const Blocks atdu = apply_a_adjoint(e, du);
      dz = rd;
      for (std::size_t k = 0; k < dz.size(); ++k) dz[k] -= atdu[k];
      dx.clear();
      for (std::size_t k = 0; k < x.size(); ++k)
        dx.push_back(target[k] - x[k] * dz[k] * zinv[k]);
      dx = symmetrize(std::move(dx));
    };

    Blocks target;
    for (std::size_t k = 0; k < x.size(); ++k) target.push_back(-x[k]);
    VectorXd du_a;
    Blocks dx_a, dz_a;
    direction(target, du_a, dx_a, dz_a);
    const double ap_a = std::min(1.0, max_step(x, dx_a));
    const double ad_a = std::min(1.0, max_step(z, dz_a));
    const double mu_aff = inner(axpy(x, ap_a, dx_a), axpy(z, ad_a, dz_a)) / n_total;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    for (std::size_t k = 0; k < x.size(); ++k)
      target[k] = sigma * mu * zinv[k] - x[k] - dx_a[k] * dz_a[k] * zinv[k];
    VectorXd du;
    Blocks dx, dz;
    direction(target, du, dx, dz);

    const double ap = std::min(1.0, options.step_damping * max_step(x, dx));
    const double ad = std::min(1.0, options.step_damping * max_step(z, dz));
    x = symmetrize(axpy(x, ap, dx));
    z = symmetrize(axpy(z, ad, dz));
    u += ad * du;
    sol.history.back().step_primal = ap;
    sol.history.back().step_dual = ad;
  }
  return finish(Status::kMaxIters);
}

bool CertificateReport::passed(double tol_feasibility, double tol_gap) const {
  return primal_feasibility <= tol_feasibility && primal_min_eig >= -tol_feasibility &&
         dual_feasibility <= tol_feasibility && slack_mismatch <= tol_feasibility &&
         gap <= tol_gap;
}

CertificateReport verify_certificate(const Problem& p, const Solution& s) {
  CertificateReport rep;
  const int k = p.num_blocks();
  if (static_cast<int>(s.primal.size()) != k || s.y.size() != Eigen::Index(p.constraints.size()))
    throw ValidationError("verify_certificate: solution does not match problem shape");

  Eigen::VectorXd b(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t i = 0; i < p.constraints.size(); ++i) b(Eigen::Index(i)) = p.constraints[i].rhs;
  rep.primal_feasibility = p.constraint_residual(s.primal).norm() / (1.0 + b.norm());

  rep.primal_min_eig = kInf;
  rep.dual_min_eig = kInf;
  const double sign = p.sense == Sense::kMaximize ? 1.0 : -1.0;
  for (int blk = 0; blk < k; ++blk) {
    rep.primal_min_eig = std::min(rep.primal_min_eig, min_eigenvalue<double>(
                                                          hermitian_part<double>(s.primal[blk])));
    const int n = p.block_dims[blk];
    CMatrix zb = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < p.constraints.size(); ++i)
      if (p.constraints[i].coeffs[blk].size()) zb += s.y(Eigen::Index(i)) * p.constraints[i].coeffs[blk];
    if (p.objective[blk].size()) zb -= p.objective[blk];
    zb *= sign;
    zb = hermitian_part<double>(zb);
    rep.dual_min_eig = std::min(rep.dual_min_eig, min_eigenvalue<double>(zb));
    if (static_cast<int>(s.dual_slack.size()) == k)
      rep.slack_mismatch =
          std::max(rep.slack_mismatch, (s.dual_slack[blk] - zb).cwiseAbs().maxCoeff());
    else
      rep.slack_mismatch = kInf;
  }
  rep.dual_feasibility = std::max(0.0, -rep.dual_min_eig);
  rep.primal_objective = p.objective_value(s.primal);
  rep.dual_objective = b.dot(s.y) + p.objective_offset;
  rep.gap = std::abs(rep.primal_objective - rep.dual_objective) /
            (1.0 + std::abs(rep.primal_objective) + std::abs(rep.dual_objective));

  const double correction =
      rep.dual_feasibility == 0.0 ? 0.0
      : p.trace_bound > 0.0       ? p.trace_bound * rep.dual_feasibility
                                  : kInf;
  rep.rigorous_bound = p.sense == Sense::kMaximize ? rep.dual_objective + correction
                                                   : rep.dual_objective - correction;
  return rep;
}

}  // namespace entbreak::sdp

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

// Dense complex linear algebra over labeled subsystem layouts.
//
// A layout is an ordered list of (label, dimension) pairs. Basis indices are
// big-endian in that order: for layout A,B,C the ket |abc> sits at index
// a*dB*dC + b*dC + c.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "entbreak/errors.hpp"

namespace entbreak {

namespace tol {
inline constexpr double kHermitian = 1e-12;
inline constexpr double kPsdClip = 1e-10;
inline constexpr double kRank = 1e-9;
}  // namespace tol

template <typename Real>
using ComplexMatrix =
    Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrix = ComplexMatrix<double>;
using CVector = ComplexVector<double>;
using Complex = std::complex<double>;

using LabelList = std::vector<std::string>;

class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(LabelList labels, std::vector<int> dims);

  /// One qubit per label, e.g. qubits({"A", "B", "C"}).
  static SubsystemLayout qubits(const LabelList& labels);

  const LabelList& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  int size() const { return static_cast<int>(labels_.size()); }
  Eigen::Index total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  int index_of(std::string_view label) const;
  int dim_of(std::string_view label) const { return dims_[index_of(label)]; }

  /// Sub-layout with the given labels, kept in this layout's order.
  SubsystemLayout select(const LabelList& keep) const;
  /// This layout with `drop` removed.
  SubsystemLayout without(const LabelList& drop) const;
  SubsystemLayout concat(const SubsystemLayout& other) const;

  /// Stride of subsystem k in the big-endian index.
  Eigen::Index stride(int k) const;

  std::string to_string() const;

  bool operator==(const SubsystemLayout& other) const {
    return labels_ == other.labels_ && dims_ == other.dims_;
  }

 private:
  LabelList labels_;
  std::vector<int> dims_;
  Eigen::Index total_dim_ = 1;
};

/// Square complex matrix whose rows and columns follow a subsystem layout.
template <typename Real = double>
struct BasicDenseMatrix {
  using Scalar = std::complex<Real>;
  using Matrix = ComplexMatrix<Real>;

  SubsystemLayout layout;
  Matrix data;

  BasicDenseMatrix() = default;
  BasicDenseMatrix(SubsystemLayout l, Matrix m)
      : layout(std::move(l)), data(std::move(m)) {
    if (data.rows() != layout.total_dim() || data.cols() != layout.total_dim()) {
      throw DimensionError("matrix is " + std::to_string(data.rows()) + "x" +
                           std::to_string(data.cols()) + " but layout " +
                           layout.to_string() + " has dimension " +
                           std::to_string(layout.total_dim()));
    }
  }

  static BasicDenseMatrix identity(const SubsystemLayout& l) {
    return {l, Matrix::Identity(l.total_dim(), l.total_dim())};
  }
  static BasicDenseMatrix maximally_mixed(const SubsystemLayout& l) {
    const auto d = l.total_dim();
    return {l, Matrix::Identity(d, d) / Real(d)};
  }

  Eigen::Index dim() const { return data.rows(); }
  Scalar trace() const { return data.trace(); }
};

template <typename Real = double>
struct BasicStateVector {
  using Vector = ComplexVector<Real>;

  SubsystemLayout layout;
  Vector data;

  BasicStateVector() = default;
  BasicStateVector(SubsystemLayout l, Vector v)
      : layout(std::move(l)), data(std::move(v)) {
    if (data.size() != layout.total_dim()) {
      throw DimensionError("vector length " + std::to_string(data.size()) +
                           " does not match layout " + layout.to_string());
    }
  }

  Real norm() const { return data.norm(); }
};

using DenseMatrix = BasicDenseMatrix<double>;
using StateVector = BasicStateVector<double>;

template <typename Real>
struct HermitianEigen {
  RealVector<Real> values;    // ascending
  ComplexMatrix<Real> vectors;  // orthonormal columns
};

namespace detail {

// Maps a global index to the digits of each subsystem.
inline std::vector<int> digits_of(Eigen::Index index,
                                  const SubsystemLayout& layout) {
  std::vector<int> digits(layout.size());
  for (int k = layout.size() - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(index % layout.dims()[k]);
    index /= layout.dims()[k];
  }
  return digits;
}

// For every global index i, the index of its projection onto `sub`.
inline std::vector<Eigen::Index> project_indices(const SubsystemLayout& full,
                                                 const SubsystemLayout& sub) {
  std::vector<int> positions;
  positions.reserve(sub.size());
  for (const auto& label : sub.labels()) positions.push_back(full.index_of(label));
  std::vector<Eigen::Index> out(full.total_dim());
  for (Eigen::Index i = 0; i < full.total_dim(); ++i) {
    const auto digits = digits_of(i, full);
    Eigen::Index j = 0;
    for (int k = 0; k < sub.size(); ++k) j = j * sub.dims()[k] + digits[positions[k]];
    out[i] = j;
  }
  return out;
}

}  // namespace detail

template <typename Real>
Real hermiticity_error(const ComplexMatrix<Real>& m) {
  if (m.size() == 0) return Real(0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
Real hermiticity_error(const BasicDenseMatrix<Real>& m) {
  return hermiticity_error<Real>(m.data);
}

template <typename Real>
ComplexMatrix<Real> hermitian_part(const ComplexMatrix<Real>& m) {
  return (m + m.adjoint()) / Real(2);
}

/// Kronecker product; the result layout is a's layout followed by b's.
template <typename Real>
BasicDenseMatrix<Real> tensor_product(const BasicDenseMatrix<Real>& a,
                                      const BasicDenseMatrix<Real>& b) {
  const auto da = a.dim(), db = b.dim();
  ComplexMatrix<Real> out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      out.block(i * db, j * db, db, db) = a.data(i, j) * b.data;
  return {a.layout.concat(b.layout), std::move(out)};
}

template <typename Real>
BasicStateVector<Real> tensor_product(const BasicStateVector<Real>& a,
                                      const BasicStateVector<Real>& b) {
  const auto da = a.data.size(), db = b.data.size();
  ComplexVector<Real> out(da * db);
  for (Eigen::Index i = 0; i < da; ++i) out.segment(i * db, db) = a.data(i) * b.data;
  return {a.layout.concat(b.layout), std::move(out)};
}

/// |v><v|
template <typename Real>
BasicDenseMatrix<Real> projector(const BasicStateVector<Real>& v) {
  return {v.layout, v.data * v.data.adjoint()};
}

/// Reduced operator on `keep` (kept in m's layout order).
template <typename Real>
BasicDenseMatrix<Real> partial_trace(const BasicDenseMatrix<Real>& m,
                                     const LabelList& keep) {
  if (keep.empty()) throw LabelError("partial_trace: keep set is empty");
  const SubsystemLayout kept = m.layout.select(keep);
  LabelList traced_labels;
  for (const auto& l : m.layout.labels())
    if (!kept.contains(l)) traced_labels.push_back(l);
  const auto k = detail::project_indices(m.layout, kept);
  std::vector<Eigen::Index> r(m.dim(), 0);
  if (!traced_labels.empty())
    r = detail::project_indices(m.layout, m.layout.select(traced_labels));

  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(kept.total_dim(), kept.total_dim());
  for (Eigen::Index i = 0; i < m.dim(); ++i)
    for (Eigen::Index j = 0; j < m.dim(); ++j)
      if (r[i] == r[j]) out(k[i], k[j]) += m.data(i, j);
  return {kept, std::move(out)};
}

/// Partial trace over `drop`.
template <typename Real>
BasicDenseMatrix<Real> trace_out(const BasicDenseMatrix<Real>& m,
                                 const LabelList& drop) {
  return partial_trace(m, m.layout.without(drop).labels());
}

/// Adjoint of partial_trace: embeds m as m (x) I on the remaining subsystems
/// of `global`, i.e. <extend(m), X> = <m, tr_rest X>.
template <typename Real>
BasicDenseMatrix<Real> extend_operator(const BasicDenseMatrix<Real>& m,
                                       const SubsystemLayout& global) {
  const SubsystemLayout sub = global.select(m.layout.labels());
  if (!(sub == m.layout))
    throw LabelError("extend_operator: layout " + m.layout.to_string() +
                     " is not an ordered sub-layout of " + global.to_string());
  LabelList rest;
  for (const auto& l : global.labels())
    if (!sub.contains(l)) rest.push_back(l);
  const auto k = detail::project_indices(global, sub);
  std::vector<Eigen::Index> r(global.total_dim(), 0);
  if (!rest.empty()) r = detail::project_indices(global, global.select(rest));
  const auto d = global.total_dim();
  ComplexMatrix<Real> out = ComplexMatrix<Real>::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (r[i] == r[j]) out(i, j) = m.data(k[i], k[j]);
  return {global, std::move(out)};
}

/// Reorders subsystems; `order` must be a permutation of m's labels.
template <typename Real>
BasicDenseMatrix<Real> permute_subsystems(const BasicDenseMatrix<Real>& m,
                                          const LabelList& order) {
  if (static_cast<int>(order.size()) != m.layout.size())
    throw LabelError("permute_subsystems: order must list every subsystem");
  std::vector<int> dims;
  for (const auto& l : order) dims.push_back(m.layout.dim_of(l));
  SubsystemLayout target(order, dims);
  const auto map = detail::project_indices(m.layout, target);
  ComplexMatrix<Real> out(m.dim(), m.dim());
  for (Eigen::Index i = 0; i < m.dim(); ++i)
    for (Eigen::Index j = 0; j < m.dim(); ++j) out(map[i], map[j]) = m.data(i, j);
  return {std::move(target), std::move(out)};
}

template <typename Real>
BasicDenseMatrix<Real> relabel(const BasicDenseMatrix<Real>& m, const LabelList& labels) {
  return {SubsystemLayout(labels, m.layout.dims()), m.data};
}

/// Transposes the indices of one subsystem.
template <typename Real>
BasicDenseMatrix<Real> partial_transpose(const BasicDenseMatrix<Real>& m,
                                         std::string_view subsystem) {
  const int pos = m.layout.index_of(subsystem);
  const Eigen::Index stride = m.layout.stride(pos);
  const int d = m.layout.dims()[pos];
  ComplexMatrix<Real> out(m.dim(), m.dim());
  for (Eigen::Index i = 0; i < m.dim(); ++i) {
    const Eigen::Index di = (i / stride) % d;
    for (Eigen::Index j = 0; j < m.dim(); ++j) {
      const Eigen::Index dj = (j / stride) % d;
      out(i + (dj - di) * stride, j + (di - dj) * stride) = m.data(i, j);
    }
  }
  return {m.layout, std::move(out)};
}

template <typename Real>
HermitianEigen<Real> eig_hermitian(const ComplexMatrix<Real>& m) {
  const Real scale = std::max(Real(1), m.cwiseAbs().maxCoeff());
  if (hermiticity_error<Real>(m) > Real(tol::kHermitian) * scale)
    throw ValidationError("eig_hermitian: matrix is not Hermitian (error " +
                          std::to_string(double(hermiticity_error<Real>(m))) + ")");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix<Real>> solver(hermitian_part<Real>(m));
  if (solver.info() != Eigen::Success)
    throw ValidationError("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Real>
HermitianEigen<Real> eig_hermitian(const BasicDenseMatrix<Real>& m) {
  return eig_hermitian<Real>(m.data);
}

template <typename Real>
Real min_eigenvalue(const ComplexMatrix<Real>& m) {
  return eig_hermitian<Real>(m).values(0);
}

template <typename Real>
Real min_eigenvalue(const BasicDenseMatrix<Real>& m) {
  return min_eigenvalue<Real>(m.data);
}

/// Smallest eigenvalue of the partial transpose on `subsystem`.
template <typename Real>
Real min_pt_eigenvalue(const BasicDenseMatrix<Real>& m, std::string_view subsystem) {
  return min_eigenvalue(partial_transpose(m, subsystem));
}

namespace detail {

template <typename Real, typename F>
ComplexMatrix<Real> psd_function(const ComplexMatrix<Real>& m, F&& f,
                                 const char* what) {
  auto eig = eig_hermitian<Real>(m);
  RealVector<Real> mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    Real v = eig.values(i);
    if (v < -Real(tol::kPsdClip))
      throw ValidationError(std::string(what) + ": negative eigenvalue " +
                            std::to_string(double(v)));
    mapped(i) = f(std::max(v, Real(0)));
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace detail

template <typename Real>
BasicDenseMatrix<Real> psd_sqrt(const BasicDenseMatrix<Real>& m) {
  return {m.layout, detail::psd_function<Real>(
                        m.data, [](Real v) { return std::sqrt(v); }, "psd_sqrt")};
}

/// Pseudo-inverse square root: eigenvalues below rank_tol map to zero.
template <typename Real>
BasicDenseMatrix<Real> psd_pinv_sqrt(const BasicDenseMatrix<Real>& m,
                                     Real rank_tol = Real(tol::kRank)) {
  return {m.layout, detail::psd_function<Real>(
                        m.data,
                        [rank_tol](Real v) {
                          return v < rank_tol ? Real(0) : Real(1) / std::sqrt(v);
                        },
                        "psd_pinv_sqrt")};
}

/// Operator norm of a Hermitian PSD matrix, i.e. its largest eigenvalue.
template <typename Real>
Real op_norm_inf(const BasicDenseMatrix<Real>& m) {
  auto eig = eig_hermitian(m);
  return eig.values(eig.values.size() - 1);
}

/// Largest singular value; used for distances between arbitrary operators.
template <typename Real>
Real spectral_norm(const ComplexMatrix<Real>& m) {
  if (m.size() == 0) return Real(0);
  Eigen::JacobiSVD<ComplexMatrix<Real>> svd(m);
  return svd.singularValues()(0);
}

}  // namespace entbreak

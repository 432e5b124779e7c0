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

// Reference implementations for tests. Plain index arithmetic on qubit
// registers and closed-form 2x2 linear algebra; nothing here calls into the
// library.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Cx = std::complex<double>;

inline int bit(int index, int q, int n) { return (index >> (n - 1 - q)) & 1; }

// Partial trace over the qubits not flagged in `keep` (qubit 0 most significant).
inline Mat ptrace(const Mat& m, int n, const std::vector<bool>& keep) {
  int nk = 0;
  for (bool k : keep) nk += k;
  Mat out = Mat::Zero(1 << nk, 1 << nk);
  for (int i = 0; i < (1 << n); ++i)
    for (int j = 0; j < (1 << n); ++j) {
      bool same = true;
      int ri = 0, rj = 0;
      for (int q = 0; q < n; ++q) {
        if (keep[q]) {
          ri = 2 * ri + bit(i, q, n);
          rj = 2 * rj + bit(j, q, n);
        } else if (bit(i, q, n) != bit(j, q, n)) {
          same = false;
        }
      }
      if (same) out(ri, rj) += m(i, j);
    }
  return out;
}

// Transpose of qubit q.
inline Mat ptranspose(const Mat& m, int n, int q) {
  Mat out(m.rows(), m.cols());
  const int mask = 1 << (n - 1 - q);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const int ii = (i & ~mask) | (j & mask);
      const int jj = (j & ~mask) | (i & mask);
      out(ii, jj) = m(i, j);
    }
  return out;
}

// Smallest real part of the spectrum via the general complex eigensolver.
inline double min_eig(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m);
  return es.eigenvalues().real().minCoeff();
}

inline double max_eig(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> es(m);
  return es.eigenvalues().real().maxCoeff();
}

inline double min_eig_2x2(const Mat& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
}

// sqrt of a positive definite 2x2 matrix: (M + sqrt(det) I) / sqrt(tr + 2 sqrt(det)).
inline Mat sqrt_2x2(const Mat& m) {
  const double s = std::sqrt((m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real());
  const double t = std::sqrt(m.trace().real() + 2.0 * s);
  return (m + s * Mat::Identity(2, 2)) / t;
}

inline Mat inverse_2x2(const Mat& m) {
  const Cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Mat out(2, 2);
  out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return out / det;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Choi state of the super-activated map for a three-qubit Choi state rho on
// [A', B, C]: (L (x) I) rho_BC (L (x) I)^dag / (2 alpha) with
// L = sqrt(alpha) rho_B^{-1/2}.
inline Mat m_choi(const Mat& rho_abc) {
  const Mat rho_bc = ptrace(rho_abc, 3, {false, true, true});
  const Mat rho_b = ptrace(rho_abc, 3, {false, true, false});
  const double alpha = min_eig_2x2(rho_b);
  const Mat l = std::sqrt(alpha) * inverse_2x2(sqrt_2x2(rho_b));
  const Mat big = kron(l, Mat::Identity(2, 2));
  return big * rho_bc * big.adjoint() / (2.0 * alpha);
}

}  // namespace oracle

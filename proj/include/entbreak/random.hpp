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

// Seeded random operators. A single 64-bit seed is split into independent
// streams with SplitMix64, so (seed, stream) pairs never share state.

#pragma once

#include <cstdint>
#include <random>

#include "entbreak/tensor.hpp"

namespace entbreak {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

/// Entries with independent standard normal real and imaginary parts.
inline CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

inline CMatrix random_real_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), 0.0);
  return m;
}

/// (G + G^dag) / 2 for a complex Gaussian G.
inline CMatrix random_hermitian(Eigen::Index n, Rng& rng) {
  const CMatrix g = random_gaussian(n, n, rng);
  return hermitian_part<double>(g);
}

/// G G^dag / tr for a complex Gaussian n x rank factor G.
inline DenseMatrix random_density(const SubsystemLayout& layout, Rng& rng, Eigen::Index rank = 0) {
  const auto n = layout.total_dim();
  const CMatrix g = random_gaussian(n, rank > 0 ? rank : n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return {layout, hermitian_part<double>(rho)};
}

inline StateVector random_pure(const SubsystemLayout& layout, Rng& rng) {
  CVector v = random_gaussian(layout.total_dim(), 1, rng).col(0);
  v.normalize();
  return {layout, std::move(v)};
}

}  // namespace entbreak

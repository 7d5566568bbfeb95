// Copyright 2026 The ncineq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "ncineq/errors.hpp"

namespace ncineq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Largest qubit count for which Pauli strings and graph states may be
/// expanded into explicit 2^n amplitudes or matrices.
inline constexpr std::size_t kDenseQubitCap = 12;

/// Largest Hilbert-space dimension accepted for an explicit-matrix
/// realization.
inline constexpr std::size_t kDenseRealizationDimCap = std::size_t{1} << kDenseQubitCap;

/// Largest dimension for which full SVD-based analyses (subspace rank,
/// exact spectral norms) are run.
inline constexpr std::size_t kSpectralDimCap = 1024;

inline void require_dense_qubits(std::size_t n, const char* what) {
  if (n > kDenseQubitCap) {
    throw CapacityError(std::string(what) + ": n=" + std::to_string(n) +
                        " exceeds dense cap " + std::to_string(kDenseQubitCap));
  }
}

/// Spectral norm. Exact zero short-circuits; tiny matrices report their
/// Frobenius norm, which bounds the spectral norm from above.
inline double operator_norm(const Matrix& m) {
  const double fro = m.norm();
  if (fro <= 1e-13) return fro;
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// Spectral norm of a sparse operator. Above kSpectralDimCap the value comes
/// from power iteration on M^H M, which converges from below.
inline double operator_norm(const SparseMatrix& m) {
  const double fro = m.norm();
  if (fro <= 1e-13) return fro;
  if (static_cast<std::size_t>(std::max(m.rows(), m.cols())) <= kSpectralDimCap) {
    return operator_norm(Matrix(m));
  }
  Vector v(m.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(1.0 + 1e-3 * static_cast<double>(i % 97), 0.0);
  v.normalize();
  double estimate = 0.0;
  for (int iter = 0; iter < 500; ++iter) {
    Vector w = m.adjoint() * (m * v);
    const double next = std::sqrt(w.norm());
    if (w.norm() == 0.0) return 0.0;
    v = w / w.norm();
    if (std::abs(next - estimate) <= 1e-13 * next) return next;
    estimate = next;
  }
  return estimate;
}

/// Embeds a single-qubit operator at 1-based `site` of an n-qubit register.
/// Qubit 1 is the least significant bit of the basis index.
inline Matrix embed_single(const Eigen::Matrix2cd& op, std::size_t site,
                           std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t bit = std::size_t{1} << (site - 1);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    const std::size_t in = (col & bit) ? 1 : 0;
    for (std::size_t out = 0; out < 2; ++out) {
      const Complex v = op(static_cast<Eigen::Index>(out),
                           static_cast<Eigen::Index>(in));
      if (v == Complex{}) continue;
      const std::size_t row = out ? (col | bit) : (col & ~bit);
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = v;
    }
  }
  return m;
}

namespace pauli_matrix {
inline Eigen::Matrix2cd I() { return Eigen::Matrix2cd::Identity(); }
inline Eigen::Matrix2cd X() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}
inline Eigen::Matrix2cd Y() {
  Eigen::Matrix2cd m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Eigen::Matrix2cd Z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli_matrix

}  // namespace ncineq

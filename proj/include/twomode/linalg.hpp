// Copyright 2026 The twomode Authors.
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

#ifndef TWOMODE_LINALG_HPP
#define TWOMODE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "twomode/errors.hpp"

namespace twomode {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/// Relative Hermiticity tolerance: max|M - M^dagger| < tol * max|M|.
inline constexpr double kHermitianTol = 1e-12;
/// Largest dense matrix dimension the library will materialise.
inline constexpr Index kMaxDenseDim = 4096;
/// Largest composite Hilbert-space dimension accepted.
inline constexpr Index kMaxTotalDim = Index{1} << 16;
/// Eigenvalues in (-kClipTol, 0) are treated as roundoff and clipped to zero.
inline constexpr double kClipTol = 1e-10;

inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  if (scale == 0.0) return true;
  return max_abs(m - m.adjoint()) < rel_tol * scale;
}

inline bool is_hermitian(const SparseMatrix& m, double rel_tol = kHermitianTol) {
  if (m.rows() != m.cols()) return false;
  double scale = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) scale = std::max(scale, std::abs(it.value()));
  if (scale == 0.0) return true;
  const SparseMatrix diff = m - SparseMatrix(m.adjoint());
  double worst = 0.0;
  for (Index k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst < rel_tol * scale;
}

/// Kronecker product, (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b,
                          Index max_dim = kMaxDenseDim) {
  if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim) {
    throw TruncationTooLarge("kron: result " + std::to_string(a.rows() * b.rows()) + "x" +
                             std::to_string(a.cols() * b.cols()) + " exceeds max dimension " +
                             std::to_string(max_dim));
  }
  return Eigen::kroneckerProduct(a, b).eval();
}

inline SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b,
                         Index max_dim = kMaxTotalDim) {
  if (a.rows() * b.rows() > max_dim || a.cols() * b.cols() > max_dim) {
    throw TruncationTooLarge("kron: sparse result exceeds max dimension " + std::to_string(max_dim));
  }
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

/// Eigenpairs of a Hermitian matrix; values ascending, vectors unitary (columns).
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;

  Index dim() const { return values.size(); }
  RealVector descending_values() const { return values.reverse(); }
};

// Backed by Eigen's tridiagonalisation + implicit QL solver.
inline EigenSystem hermitian_eigen(const ComplexMatrix& h) {
  if (!is_hermitian(h)) throw NotHermitian("hermitian_eigen: input is not Hermitian");
  if (h.rows() == 0) return {};
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw PhysicsError("hermitian_eigen: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

/// U(t) = V diag(exp(-i lambda t)) V^dagger.
inline ComplexMatrix unitary_from_eigen(const EigenSystem& es, double t) {
  const ComplexVector phases = (-kI * t * es.values.cast<cplx>()).array().exp();
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

inline ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& h, double t) {
  return unitary_from_eigen(hermitian_eigen(h), t);
}

/// Sum of |eigenvalues| of a Hermitian matrix.
inline double trace_norm_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m)) throw NotHermitian("trace_norm_hermitian: input is not Hermitian");
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

inline double clip_roundoff(double lambda) {
  return (lambda < 0.0 && lambda > -kClipTol) ? 0.0 : lambda;
}

inline double unitarity_defect(const ComplexMatrix& u) {
  return max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols()));
}

}  // namespace twomode

#endif  // TWOMODE_LINALG_HPP

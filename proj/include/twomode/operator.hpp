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

#ifndef TWOMODE_OPERATOR_HPP
#define TWOMODE_OPERATOR_HPP

#include <vector>

#include "twomode/linalg.hpp"
#include "twomode/space.hpp"
#include "twomode/states.hpp"

namespace twomode {

/// Hermitian operator on a composite space. Stored sparse: the model
/// Hamiltonians have O(dim) non-zeros and the larger truncations would not
/// fit densely. `dense()` materialises on demand.
class HermitianOperator {
 public:
  HermitianOperator(CompositeSpace space, SparseMatrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
      throw DimensionMismatch("HermitianOperator: matrix does not match space " + space_.describe());
    }
    matrix_.prune(cplx(0.0));
    matrix_.makeCompressed();
    if (!is_hermitian(matrix_)) throw NotHermitian("HermitianOperator: matrix is not Hermitian");
  }

  static HermitianOperator from_dense(CompositeSpace space, const ComplexMatrix& m) {
    return HermitianOperator(std::move(space), SparseMatrix(m.sparseView()));
  }

  const CompositeSpace& space() const { return space_; }
  const SparseMatrix& sparse() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  ComplexMatrix dense() const {
    if (dim() > kMaxDenseDim) throw TruncationTooLarge("HermitianOperator: too large to densify");
    return ComplexMatrix(matrix_);
  }

  ComplexVector apply(const ComplexVector& v) const { return matrix_ * v; }

  cplx element(Index i, Index j) const { return matrix_.coeff(i, j); }

  double expectation(const ComplexVector& v) const { return v.dot(matrix_ * v).real(); }

 private:
  CompositeSpace space_;
  SparseMatrix matrix_;
};

inline SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

/// Truncated bosonic annihilation operator on {|0>,...,|n_max>}.
inline SparseMatrix annihilation(int n_max) {
  SparseMatrix a(n_max + 1, n_max + 1);
  std::vector<Eigen::Triplet<cplx>> t;
  for (int n = 1; n <= n_max; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

/// sigma^+ = |e><g| in the {e, g} ordering.
inline SparseMatrix sigma_plus() {
  SparseMatrix s(2, 2);
  s.insert(kExcited, kGround) = 1.0;
  return s;
}

/// Lift a single-factor operator to the full space.
inline SparseMatrix embed(const CompositeSpace& space, int factor, const SparseMatrix& op) {
  if (op.rows() != space.factor_dim(factor)) throw DimensionMismatch("embed: operator dimension");
  SparseMatrix out = sparse_identity(1);
  for (int k = 0; k < space.num_factors(); ++k) {
    out = kron(out, k == factor ? op : sparse_identity(space.factor_dim(k)));
  }
  return out;
}

inline double commutator_norm(const SparseMatrix& a, const SparseMatrix& b) {
  const SparseMatrix c = a * b - b * a;
  double worst = 0.0;
  for (Index k = 0; k < c.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(c, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace twomode

#endif  // TWOMODE_OPERATOR_HPP

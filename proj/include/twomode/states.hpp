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

#ifndef TWOMODE_STATES_HPP
#define TWOMODE_STATES_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twomode/linalg.hpp"
#include "twomode/space.hpp"

namespace twomode {

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;

/// Normalised pure state on a composite space.
class StateVector {
 public:
  StateVector(CompositeSpace space, ComplexVector amplitudes)
      : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != space_.total_dim()) {
      throw DimensionMismatch("StateVector: " + std::to_string(amplitudes_.size()) +
                              " amplitudes for space " + space_.describe());
    }
    if (std::abs(amplitudes_.norm() - 1.0) >= kNormTol) {
      throw NotAState("StateVector: norm " + std::to_string(amplitudes_.norm()) + " is not 1");
    }
  }

  static StateVector normalized(CompositeSpace space, ComplexVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw NotAState("StateVector: zero vector cannot be normalised");
    return StateVector(std::move(space), amplitudes / n);
  }

  static StateVector basis(CompositeSpace space, std::initializer_list<Index> multi) {
    ComplexVector v = ComplexVector::Zero(space.total_dim());
    v(space.flatten(multi)) = 1.0;
    return StateVector(std::move(space), std::move(v));
  }

  const CompositeSpace& space() const { return space_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  cplx operator()(Index i) const { return amplitudes_(i); }
  Index dim() const { return amplitudes_.size(); }

 private:
  CompositeSpace space_;
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive operator. When a factor W with
/// rho = W W^dagger is known it is kept alongside the matrix; the
/// entanglement measures use it for accuracy near rank-deficient states.
class DensityMatrix {
 public:
  DensityMatrix(CompositeSpace space, ComplexMatrix matrix)
      : space_(std::move(space)), matrix_(std::move(matrix)) {
    validate();
  }

  static DensityMatrix from_factor(CompositeSpace space, ComplexMatrix factor) {
    if (factor.rows() != space.total_dim()) {
      throw DimensionMismatch("DensityMatrix: factor rows do not match space " + space.describe());
    }
    ComplexMatrix rho = factor * factor.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    DensityMatrix out(std::move(space), std::move(rho));
    out.factor_ = std::move(factor);
    return out;
  }

  static DensityMatrix pure(const StateVector& psi) {
    return from_factor(psi.space(), ComplexMatrix(psi.amplitudes()));
  }

  const CompositeSpace& space() const { return space_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::optional<ComplexMatrix>& factor() const { return factor_; }
  cplx operator()(Index i, Index j) const { return matrix_(i, j); }
  Index dim() const { return matrix_.rows(); }

  double trace() const { return matrix_.trace().real(); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
  bool is_positive(double tol = kClipTol) const { return min_eigenvalue() >= -tol; }

  /// Largest off-diagonal magnitude.
  double max_off_diagonal() const {
    ComplexMatrix m = matrix_;
    m.diagonal().setZero();
    return max_abs(m);
  }

 private:
  void validate() const {
    if (matrix_.rows() != space_.total_dim() || matrix_.cols() != space_.total_dim()) {
      throw DimensionMismatch("DensityMatrix: matrix does not match space " + space_.describe());
    }
    if (!is_hermitian(matrix_)) throw NotAState("DensityMatrix: matrix is not Hermitian");
    if (std::abs(trace() - 1.0) >= kTraceTol) {
      throw NotAState("DensityMatrix: trace " + std::to_string(trace()) + " is not 1");
    }
  }

  CompositeSpace space_;
  ComplexMatrix matrix_;
  std::optional<ComplexMatrix> factor_;
};

/// Mixed state held as a convex combination of normalised pure states.
class Ensemble {
 public:
  Ensemble(CompositeSpace space, std::vector<double> weights, std::vector<ComplexVector> states)
      : space_(std::move(space)), weights_(std::move(weights)), states_(std::move(states)) {
    if (weights_.size() != states_.size() || weights_.empty()) {
      throw NotAState("Ensemble: weights and states must be non-empty and the same length");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < states_.size(); ++k) {
      if (states_[k].size() != space_.total_dim()) throw DimensionMismatch("Ensemble: state dimension");
      if (weights_[k] < 0.0) throw NotAState("Ensemble: negative weight");
      if (std::abs(states_[k].norm() - 1.0) >= kNormTol) throw NotAState("Ensemble: component not normalised");
      total += weights_[k];
    }
    if (std::abs(total - 1.0) >= kTraceTol) throw NotAState("Ensemble: weights do not sum to 1");
  }

  explicit Ensemble(const StateVector& psi) : Ensemble(psi.space(), {1.0}, {psi.amplitudes()}) {}

  /// Columns of W become components with weight |w_j|^2 (rho = W W^dagger).
  /// Columns with weight below `drop` are discarded and the rest renormalised.
  static Ensemble from_factor(CompositeSpace space, const ComplexMatrix& factor, double drop = 0.0) {
    std::vector<double> w;
    std::vector<ComplexVector> s;
    double total = 0.0;
    for (Index j = 0; j < factor.cols(); ++j) {
      const double n2 = factor.col(j).squaredNorm();
      if (n2 <= drop || n2 == 0.0) continue;
      w.push_back(n2);
      s.emplace_back(factor.col(j) / std::sqrt(n2));
      total += n2;
    }
    if (w.empty()) throw NotAState("Ensemble: empty factor");
    for (double& x : w) x /= total;
    return Ensemble(std::move(space), std::move(w), std::move(s));
  }

  static Ensemble from_density(const DensityMatrix& rho, double drop = 1e-14) {
    if (rho.factor()) return from_factor(rho.space(), *rho.factor(), drop);
    const EigenSystem es = hermitian_eigen(rho.matrix());
    ComplexMatrix w(rho.dim(), rho.dim());
    for (Index j = 0; j < rho.dim(); ++j) w.col(j) = es.vectors.col(j) * std::sqrt(std::max(0.0, es.values(j)));
    return from_factor(rho.space(), w, drop);
  }

  const CompositeSpace& space() const { return space_; }
  std::size_t size() const { return states_.size(); }
  double weight(std::size_t k) const { return weights_[k]; }
  const ComplexVector& state(std::size_t k) const { return states_[k]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<ComplexVector>& states() const { return states_; }

  bool is_pure() const { return states_.size() == 1; }

  StateVector pure_state() const {
    if (!is_pure()) throw NotAState("Ensemble: state is mixed");
    return StateVector(space_, states_.front());
  }

  ComplexMatrix factor() const {
    ComplexMatrix w(space_.total_dim(), static_cast<Index>(states_.size()));
    for (std::size_t k = 0; k < states_.size(); ++k) w.col(static_cast<Index>(k)) = std::sqrt(weights_[k]) * states_[k];
    return w;
  }

  DensityMatrix density() const { return DensityMatrix::from_factor(space_, factor()); }

 private:
  CompositeSpace space_;
  std::vector<double> weights_;
  std::vector<ComplexVector> states_;
};

namespace detail {

struct TraceSplit {
  CompositeSpace reduced;
  std::vector<Index> kept;    // offsets of kept multi-indices
  std::vector<Index> traced;  // offsets of traced multi-indices
};

inline TraceSplit split_for_trace(const CompositeSpace& space, std::span<const int> keep) {
  const auto kept_factors = space.normalize_factors(keep);
  if (kept_factors.empty()) throw BadFactor("partial_trace: keep set is empty");
  const auto traced_factors = space.complement(kept_factors);
  return {space.subspace(kept_factors), space.offsets(kept_factors), space.offsets(traced_factors)};
}

/// Reshape column v into K x T with M[k,t] = v[kept[k] + traced[t]].
inline ComplexMatrix reshape_for_trace(const TraceSplit& s, const ComplexVector& v) {
  ComplexMatrix m(static_cast<Index>(s.kept.size()), static_cast<Index>(s.traced.size()));
  for (std::size_t t = 0; t < s.traced.size(); ++t)
    for (std::size_t k = 0; k < s.kept.size(); ++k)
      m(static_cast<Index>(k), static_cast<Index>(t)) = v(s.kept[k] + s.traced[t]);
  return m;
}

/// Factor of the reduced state from a factor of the full state.
inline ComplexMatrix reduce_factor(const TraceSplit& s, const ComplexMatrix& w) {
  const Index tdim = static_cast<Index>(s.traced.size());
  ComplexMatrix out(static_cast<Index>(s.kept.size()), tdim * w.cols());
  for (Index j = 0; j < w.cols(); ++j) out.middleCols(j * tdim, tdim) = reshape_for_trace(s, w.col(j));
  return out;
}

}  // namespace detail

/// Reduced state on the kept factors (result factors in ascending order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const auto split = detail::split_for_trace(rho.space(), keep);
  if (rho.factor()) {
    return DensityMatrix::from_factor(split.reduced, detail::reduce_factor(split, *rho.factor()));
  }
  const Index kdim = static_cast<Index>(split.kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(kdim, kdim);
  for (Index a = 0; a < kdim; ++a)
    for (Index b = 0; b < kdim; ++b) {
      cplx acc = 0.0;
      for (Index t : split.traced) acc += rho(split.kept[static_cast<std::size_t>(a)] + t, split.kept[static_cast<std::size_t>(b)] + t);
      out(a, b) = acc;
    }
  return DensityMatrix(split.reduced, std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

inline DensityMatrix partial_trace(const StateVector& psi, std::span<const int> keep) {
  const auto split = detail::split_for_trace(psi.space(), keep);
  return DensityMatrix::from_factor(split.reduced, detail::reshape_for_trace(split, psi.amplitudes()));
}

inline DensityMatrix partial_trace(const StateVector& psi, std::initializer_list<int> keep) {
  return partial_trace(psi, std::span<const int>(keep.begin(), keep.size()));
}

inline DensityMatrix partial_trace(const Ensemble& state, std::span<const int> keep) {
  const auto split = detail::split_for_trace(state.space(), keep);
  return DensityMatrix::from_factor(split.reduced, detail::reduce_factor(split, state.factor()));
}

inline DensityMatrix partial_trace(const Ensemble& state, std::initializer_list<int> keep) {
  return partial_trace(state, std::span<const int>(keep.begin(), keep.size()));
}

/// <j,k| rho^{T_B} |l,q> = <j,q| rho |l,k> with B the listed factors.
inline ComplexMatrix partial_transpose(const CompositeSpace& space, const ComplexMatrix& rho,
                                       std::span<const int> factors) {
  const auto fs = space.normalize_factors(factors);
  if (rho.rows() != space.total_dim() || rho.cols() != space.total_dim()) {
    throw DimensionMismatch("partial_transpose: matrix does not match space");
  }
  ComplexMatrix out(rho.rows(), rho.cols());
  for (Index j = 0; j < rho.cols(); ++j)
    for (Index i = 0; i < rho.rows(); ++i) {
      Index ii = i, jj = j;
      for (int f : fs) {
        const Index s = space.stride(f);
        const Index di = space.digit(i, f), dj = space.digit(j, f);
        ii += (dj - di) * s;
        jj += (di - dj) * s;
      }
      out(ii, jj) = rho(i, j);
    }
  return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, int factor) {
  const int f[] = {factor};
  return partial_transpose(rho.space(), rho.matrix(), f);
}

}  // namespace twomode

#endif  // TWOMODE_STATES_HPP

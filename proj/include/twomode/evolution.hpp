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

#ifndef TWOMODE_EVOLUTION_HPP
#define TWOMODE_EVOLUTION_HPP

#include <array>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "twomode/model.hpp"
#include "twomode/tensor_core.hpp"

namespace twomode {

enum class PropagatorSource { numeric, tc_analytic, djc_analytic, resolvent };

inline std::string to_string(PropagatorSource s) {
  switch (s) {
    case PropagatorSource::numeric: return "numeric";
    case PropagatorSource::tc_analytic: return "tc_analytic";
    case PropagatorSource::djc_analytic: return "djc_analytic";
    case PropagatorSource::resolvent: return "resolvent";
  }
  return "?";
}

struct Propagator {
  CompositeSpace space;
  ComplexMatrix matrix;
  double t = 0.0;
  PropagatorSource source = PropagatorSource::numeric;
};

/// Exact diagonalisation of a sparse Hamiltonian split into its connected
/// blocks (the conserved-excitation sectors for the models here). Immutable
/// after construction, so one instance can be shared across threads.
class SpectralPropagator {
 public:
  struct Block {
    std::vector<Index> indices;
    EigenSystem eig;
  };

  explicit SpectralPropagator(const HermitianOperator& h) : space_(h.space()) {
    const Index n = h.dim();
    std::vector<Index> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), Index{0});
    auto find = [&](Index x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    const SparseMatrix& m = h.sparse();
    for (Index k = 0; k < m.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
        const Index a = find(it.row()), b = find(it.col());
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
    block_of_.assign(static_cast<std::size_t>(n), -1);
    position_.assign(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
      const Index root = find(i);
      int& b = block_of_[static_cast<std::size_t>(root)];
      if (b < 0) {
        b = static_cast<int>(blocks_.size());
        blocks_.push_back({});
      }
      block_of_[static_cast<std::size_t>(i)] = b;
      position_[static_cast<std::size_t>(i)] = static_cast<Index>(blocks_[static_cast<std::size_t>(b)].indices.size());
      blocks_[static_cast<std::size_t>(b)].indices.push_back(i);
    }
    for (auto& blk : blocks_) {
      const Index d = static_cast<Index>(blk.indices.size());
      if (d > kMaxDenseDim) throw TruncationTooLarge("SpectralPropagator: block too large to diagonalise");
      ComplexMatrix sub = ComplexMatrix::Zero(d, d);
      for (Index j = 0; j < d; ++j) {
        const Index col = blk.indices[static_cast<std::size_t>(j)];
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) sub(position_[static_cast<std::size_t>(it.row())], j) = it.value();
      }
      blk.eig = hermitian_eigen(sub);
    }
  }

  const CompositeSpace& space() const { return space_; }
  Index dim() const { return space_.total_dim(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  int block_of(Index i) const { return block_of_[static_cast<std::size_t>(i)]; }
  Index position(Index i) const { return position_[static_cast<std::size_t>(i)]; }

  /// Sorted spectrum of the full operator.
  RealVector spectrum() const {
    std::vector<double> all;
    for (const auto& b : blocks_)
      for (Index k = 0; k < b.eig.dim(); ++k) all.push_back(b.eig.values(k));
    std::sort(all.begin(), all.end());
    return Eigen::Map<RealVector>(all.data(), static_cast<Index>(all.size()));
  }

  ComplexVector apply(const ComplexVector& v, double t) const {
    if (v.size() != dim()) throw DimensionMismatch("SpectralPropagator::apply: dimension");
    ComplexVector out = ComplexVector::Zero(dim());
    for (const auto& b : blocks_) {
      const Index d = static_cast<Index>(b.indices.size());
      ComplexVector sub(d);
      bool any = false;
      for (Index j = 0; j < d; ++j) {
        sub(j) = v(b.indices[static_cast<std::size_t>(j)]);
        any = any || sub(j) != cplx(0.0);
      }
      if (!any) continue;
      const ComplexVector phases = (-kI * t * b.eig.values.cast<cplx>()).array().exp();
      const ComplexVector r = b.eig.vectors * (phases.cwiseProduct(b.eig.vectors.adjoint() * sub));
      for (Index j = 0; j < d; ++j) out(b.indices[static_cast<std::size_t>(j)]) = r(j);
    }
    return out;
  }

  ComplexMatrix unitary(double t) const {
    if (dim() > kMaxDenseDim) throw TruncationTooLarge("SpectralPropagator::unitary: too large to densify");
    ComplexMatrix u = ComplexMatrix::Zero(dim(), dim());
    for (const auto& b : blocks_) {
      const ComplexMatrix ub = unitary_from_eigen(b.eig, t);
      const Index d = static_cast<Index>(b.indices.size());
      for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) u(b.indices[static_cast<std::size_t>(i)], b.indices[static_cast<std::size_t>(j)]) = ub(i, j);
    }
    return u;
  }

  Propagator propagator(double t) const { return {space_, unitary(t), t, PropagatorSource::numeric}; }

 private:
  CompositeSpace space_;
  std::vector<Block> blocks_;
  std::vector<int> block_of_;
  std::vector<Index> position_;
};

namespace detail {

/// Factor F (rows x k) replaced by an equivalent rows x rank factor with the
/// same F F^dagger, via a Householder QR of F^dagger.
inline ComplexMatrix compress_factor(const ComplexMatrix& f) {
  if (f.cols() <= f.rows()) return f;
  Eigen::HouseholderQR<ComplexMatrix> qr(f.adjoint());
  const ComplexMatrix r = qr.matrixQR().topRows(f.rows()).triangularView<Eigen::Upper>();
  return r.adjoint();
}

}  // namespace detail

/// Reduced state of atoms 1 and 2 (traces every mode factor).
inline DensityMatrix atomic_reduced(const Ensemble& state) {
  const DensityMatrix r = partial_trace(state, {kAtom1, kAtom2});
  return DensityMatrix::from_factor(r.space(), detail::compress_factor(*r.factor()));
}

inline DensityMatrix atomic_reduced(const StateVector& psi) { return atomic_reduced(Ensemble(psi)); }

inline DensityMatrix atomic_reduced(const DensityMatrix& rho) {
  return atomic_reduced(Ensemble::from_density(rho, 0.0));
}

/// Time evolution of an ensemble from a shared spectral decomposition. The
/// block overlaps are computed once; each time point costs one phase product
/// per populated block.
class Trajectory {
 public:
  Trajectory(std::shared_ptr<const SpectralPropagator> prop, Ensemble initial)
      : prop_(std::move(prop)), initial_(std::move(initial)) {
    if (!(initial_.space() == prop_->space())) throw DimensionMismatch("Trajectory: state space does not match Hamiltonian");
    const auto& blocks = prop_->blocks();
    pieces_.resize(initial_.size());
    for (std::size_t k = 0; k < initial_.size(); ++k) {
      const ComplexVector& v = initial_.state(k);
      std::vector<int> touched;
      for (Index i = 0; i < v.size(); ++i)
        if (v(i) != cplx(0.0)) touched.push_back(prop_->block_of(i));
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (int b : touched) {
        const auto& blk = blocks[static_cast<std::size_t>(b)];
        const Index d = static_cast<Index>(blk.indices.size());
        ComplexVector sub(d);
        for (Index j = 0; j < d; ++j) sub(j) = v(blk.indices[static_cast<std::size_t>(j)]);
        pieces_[k].push_back({b, blk.eig.vectors.adjoint() * sub});
      }
    }
  }

  Trajectory(const HermitianOperator& h, Ensemble initial)
      : Trajectory(std::make_shared<const SpectralPropagator>(h), std::move(initial)) {}

  const CompositeSpace& space() const { return initial_.space(); }
  const Ensemble& initial() const { return initial_; }
  const SpectralPropagator& propagator() const { return *prop_; }

  ComplexVector component(std::size_t k, double t) const {
    ComplexVector out = ComplexVector::Zero(prop_->dim());
    for (const auto& p : pieces_[k]) {
      const auto& blk = prop_->blocks()[static_cast<std::size_t>(p.block)];
      const ComplexVector phases = (-kI * t * blk.eig.values.cast<cplx>()).array().exp();
      const ComplexVector r = blk.eig.vectors * phases.cwiseProduct(p.coeffs);
      for (Index j = 0; j < r.size(); ++j) out(blk.indices[static_cast<std::size_t>(j)]) = r(j);
    }
    return out;
  }

  Ensemble state(double t) const {
    std::vector<ComplexVector> s;
    s.reserve(initial_.size());
    for (std::size_t k = 0; k < initial_.size(); ++k) {
      ComplexVector v = component(k, t);
      v /= v.norm();
      s.push_back(std::move(v));
    }
    return Ensemble(initial_.space(), initial_.weights(), std::move(s));
  }

  /// Compressed 4 x r factor of the atomic reduced state at time t.
  ComplexMatrix atomic_factor(double t) const {
    const Index adim = 4;
    const Index rest = prop_->dim() / adim;
    // Stacked conjugate-transposed factor blocks; rows are (component, mode index).
    ComplexMatrix tall(rest * static_cast<Index>(initial_.size()), adim);
    for (std::size_t k = 0; k < initial_.size(); ++k) {
      const ComplexVector v = component(k, t) * std::sqrt(initial_.weight(k));
      tall.middleRows(static_cast<Index>(k) * rest, rest) = Eigen::Map<const ComplexMatrix>(v.data(), rest, adim).conjugate();
    }
    if (tall.rows() <= adim) return tall.adjoint();
    Eigen::HouseholderQR<ComplexMatrix> qr(tall);
    const ComplexMatrix r = qr.matrixQR().topRows(adim).triangularView<Eigen::Upper>();
    return r.adjoint();
  }

  DensityMatrix atomic_state(double t) const {
    ComplexMatrix f = atomic_factor(t);
    f /= std::sqrt(f.squaredNorm());
    return DensityMatrix::from_factor(CompositeSpace({2, 2}), std::move(f));
  }

 private:
  struct Piece {
    int block;
    ComplexVector coeffs;
  };
  std::shared_ptr<const SpectralPropagator> prop_;
  Ensemble initial_;
  std::vector<std::vector<Piece>> pieces_;
};

inline StateVector evolve(const StateVector& psi, const HermitianOperator& h, double t) {
  if (!(psi.space() == h.space())) throw DimensionMismatch("evolve: state space does not match Hamiltonian");
  const SpectralPropagator prop(h);
  return StateVector::normalized(psi.space(), prop.apply(psi.amplitudes(), t));
}

inline Ensemble evolve(const Ensemble& state, const HermitianOperator& h, double t) {
  if (!(state.space() == h.space())) throw DimensionMismatch("evolve: state space does not match Hamiltonian");
  return Trajectory(h, state).state(t);
}

inline DensityMatrix evolve(const DensityMatrix& rho, const HermitianOperator& h, double t) {
  if (!(rho.space() == h.space())) throw DimensionMismatch("evolve: state space does not match Hamiltonian");
  const SpectralPropagator prop(h);
  if (rho.factor()) {
    const ComplexMatrix& f = *rho.factor();
    ComplexMatrix out(f.rows(), f.cols());
    for (Index j = 0; j < f.cols(); ++j) out.col(j) = prop.apply(f.col(j), t);
    return DensityMatrix::from_factor(rho.space(), std::move(out));
  }
  const ComplexMatrix u = prop.unitary(t);
  ComplexMatrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(rho.space(), std::move(m));
}

// ---------------------------------------------------------------------------
// Analytic operator-block propagators.

namespace detail {

inline ComplexMatrix dense_annihilation(int n_max) { return ComplexMatrix(annihilation(n_max)); }

inline ComplexMatrix diag(const RealVector& d) { return d.cast<cplx>().asDiagonal(); }

/// Place 4 x 4 operator blocks (atomic row/col in {ee, eg, ge, gg}) into a
/// [2,2,M] matrix.
inline ComplexMatrix assemble_atomic_blocks(const std::array<std::array<ComplexMatrix, 4>, 4>& b) {
  const Index m = b[0][0].rows();
  ComplexMatrix out(4 * m, 4 * m);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block(i * m, j * m, m, m) = b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

}  // namespace detail

/// TC propagator from the operator-block closed form, on [2,2,n_max+1].
/// Functions of A = A1 A1^dag + A1^dag A1 are taken on its (diagonal)
/// spectrum; the truncated A1 is used throughout so the result is exact for
/// the truncated Hamiltonian.
inline Propagator tc_propagator_blocks(int n_max, double g, double t) {
  if (n_max < 1) throw ExceedsTruncation("tc_propagator_blocks: n_max must be at least 1");
  const ComplexMatrix a = detail::dense_annihilation(n_max);
  const ComplexMatrix ad = a.adjoint();
  const RealVector calA = (a * ad + ad * a).diagonal().real();
  const RealVector root = (4.0 * calA).cwiseSqrt() * g * t;
  const RealVector cosv = root.array().cos();
  const RealVector sinv = root.array().sin() / (2.0 * calA).cwiseSqrt().array();
  const ComplexMatrix inv = detail::diag(calA.cwiseInverse());
  const ComplexMatrix cos_inv = detail::diag(cosv.cwiseQuotient(calA));
  const ComplexMatrix sinm = detail::diag(sinv);
  const ComplexMatrix cosm = detail::diag(cosv);
  const ComplexMatrix id = ComplexMatrix::Identity(n_max + 1, n_max + 1);

  const ComplexMatrix s1 = a * sinm, s2 = sinm * ad, s3 = sinm * a, s4 = ad * sinm;
  const ComplexMatrix c1 = id - a * inv * ad + a * cos_inv * ad;
  const ComplexMatrix c2 = -a * inv * a + a * cos_inv * a;
  const ComplexMatrix c3 = 0.5 * (cosm + id);
  const ComplexMatrix c4 = 0.5 * (cosm - id);
  const ComplexMatrix c5 = -ad * inv * ad + ad * cos_inv * ad;
  const ComplexMatrix c6 = id - ad * inv * a + ad * cos_inv * a;
  const cplx mi = -kI;
  const std::array<std::array<ComplexMatrix, 4>, 4> blocks{{
      {c1, mi * s1, mi * s1, c2},
      {mi * s2, c3, c4, mi * s3},
      {mi * s2, c4, c3, mi * s3},
      {c5, mi * s4, mi * s4, c6},
  }};
  return {CompositeSpace::two_atoms_one_mode(n_max), detail::assemble_atomic_blocks(blocks), t,
          PropagatorSource::tc_analytic};
}

namespace detail {

/// Single atom + mode Jaynes-Cummings propagator for sqrt(2) g (s^+ A + h.c.)
/// in (e, g) x Fock ordering: [[C1, -i S1], [-i S2, C2]] with
/// S1 = f(A A^dag) A and S2 = A^dag f(A A^dag), f(mu) = sin(sqrt(2 mu) g t) / sqrt(mu).
/// `published_s2` evaluates S2 as A^dag f(A^dag A) instead (audit only).
inline ComplexMatrix jc_subsystem(int n_max, double g, double t, bool published_s2 = false) {
  const ComplexMatrix a = dense_annihilation(n_max);
  const ComplexMatrix ad = a.adjoint();
  const RealVector aad = (a * ad).diagonal().real();
  const RealVector ada = (ad * a).diagonal().real();
  const double k = std::sqrt(2.0) * g * t;
  auto cosf = [&](const RealVector& mu) { return RealVector((mu.cwiseSqrt() * k).array().cos()); };
  // sin(sqrt(2 mu) g t) / sqrt(mu), with the limit sqrt(2) g t at mu = 0.
  auto sincf = [&](const RealVector& mu) {
    RealVector out(mu.size());
    for (Index i = 0; i < mu.size(); ++i) out(i) = mu(i) > 0.0 ? std::sin(std::sqrt(mu(i)) * k) / std::sqrt(mu(i)) : k;
    return out;
  };
  const Index m = n_max + 1;
  ComplexMatrix u(2 * m, 2 * m);
  u.topLeftCorner(m, m) = diag(cosf(aad));
  u.bottomRightCorner(m, m) = diag(cosf(ada));
  u.topRightCorner(m, m) = -kI * (diag(sincf(aad)) * a);
  u.bottomLeftCorner(m, m) = -kI * (ad * diag(sincf(published_s2 ? ada : aad)));
  return u;
}

/// Reorder a matrix on [a1, m1, a2, m2] to the fixed [a1, a2, m1, m2] order.
inline ComplexMatrix reorder_subsystems(const ComplexMatrix& u, Index m) {
  const CompositeSpace from({2, m, 2, m});
  const CompositeSpace to({2, 2, m, m});
  const Index n = u.rows();
  std::vector<Index> perm(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto d = from.unflatten(i);
    perm[static_cast<std::size_t>(i)] = to.flatten({d[0], d[2], d[1], d[3]});
  }
  ComplexMatrix out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) = u(i, j);
  return out;
}

}  // namespace detail

/// DJC propagator U1 (x) U2 from the subsystem blocks, on [2,2,n_max+1,n_max+1].
inline Propagator djc_propagator_blocks(int n_max, double g, double t) {
  if (n_max < 1) throw ExceedsTruncation("djc_propagator_blocks: n_max must be at least 1");
  const Index m = n_max + 1;
  if (4 * m * m > kMaxDenseDim) throw TruncationTooLarge("djc_propagator_blocks: space too large to densify");
  static_assert(kDjcResidualPhase == 0.0, "subsystem 2 assumes no residual phase");
  const ComplexMatrix u1 = detail::jc_subsystem(n_max, g, t);
  const ComplexMatrix u2 = detail::jc_subsystem(n_max, g, t);
  return {CompositeSpace::two_atoms_two_modes(n_max), detail::reorder_subsystems(kron(u1, u2), m), t,
          PropagatorSource::djc_analytic};
}

/// Atom-2 factor I_atom1 (x) U2 on [2,2,M] (atoms x mode 2). With both flags
/// off this is the working subsystem form. `printed_diagonal` arranges the
/// 4 x 4 diagonal as (C21, C21, C22, C22) and `published_s2` uses
/// A^dag f(A^dag A) for S22, reproducing the published layout for the audit.
inline ComplexMatrix djc_u2_variant(int n_max, double g, double t, bool printed_diagonal, bool published_s2) {
  const Index m = n_max + 1;
  const ComplexMatrix sub = detail::jc_subsystem(n_max, g, t, published_s2);
  const ComplexMatrix c1 = sub.topLeftCorner(m, m), c2 = sub.bottomRightCorner(m, m);
  const ComplexMatrix ms1 = sub.topRightCorner(m, m), ms2 = sub.bottomLeftCorner(m, m);
  const ComplexMatrix z = ComplexMatrix::Zero(m, m);
  const ComplexMatrix& d1 = printed_diagonal ? c1 : c2;  // eg
  const ComplexMatrix& d2 = printed_diagonal ? c2 : c1;  // ge
  const std::array<std::array<ComplexMatrix, 4>, 4> blocks{{
      {c1, ms1, z, z},
      {ms2, d1, z, z},
      {z, z, d2, ms1},
      {z, z, ms2, c2},
  }};
  return detail::assemble_atomic_blocks(blocks);
}

// ---------------------------------------------------------------------------
// Single-excitation sector {|eg00>, |ge00>, |gg10>, |gg01>}.

inline std::array<Index, 4> single_excitation_indices(const CompositeSpace& space) {
  return {space.flatten({kExcited, kGround, 0, 0}), space.flatten({kGround, kExcited, 0, 0}),
          space.flatten({kGround, kGround, 1, 0}), space.flatten({kGround, kGround, 0, 1})};
}

inline double rabi_k1(double phi, double g) { return 2.0 * g * std::sin(phi / 4.0); }
inline double rabi_k2(double phi, double g) { return 2.0 * g * std::cos(phi / 4.0); }

/// The sixteen resolvent-derived elements exactly as published, including the
/// optional e^{-i omega0 t} factor. Quarantined: compare against
/// resolvent_numeric_block before relying on any phase.
inline ComplexMatrix resolvent_propagator_as_published(double phi, double g, double t, double omega0 = 0.0) {
  const double k1 = rabi_k1(phi, g) * t, k2 = rabi_k2(phi, g) * t;
  const cplx f = std::exp(-kI * omega0 * t) / 2.0;
  const cplx u11 = f * (std::cos(k1) + std::cos(k2));
  const cplx u12 = f * std::exp(-kI * phi / 2.0) * (std::cos(k1) - std::cos(k2));
  const cplx u21 = f * std::exp(kI * phi / 2.0) * (std::cos(k1) - std::cos(k2));
  const cplx u13 = f * std::exp(-kI * phi / 4.0) * (-kI * std::sin(k1) + std::sin(k2));
  const cplx u31 = f * std::exp(kI * phi / 4.0) * (-kI * std::sin(k1) - std::sin(k2));
  const cplx u24 = u13 * std::exp(kI * phi);
  const cplx u42 = u31 * std::exp(-kI * phi);
  ComplexMatrix u(4, 4);
  u << u11, u12, u13, u31,  //
      u21, u11, u31, u24,   //
      u31, u13, u11, u21,   //
      u13, u42, u12, u11;
  return u;
}

/// Single-excitation block of the numeric propagator of the full model.
inline ComplexMatrix resolvent_numeric_block(double phi, double g, double t, double omega0 = 0.0) {
  ModelParams p;
  p.g = g;
  p.phi = phi;
  p.n_max = 1;
  p.omega0 = omega0;
  p.include_free = omega0 != 0.0;
  const HermitianOperator h = build_hamiltonian(p);
  const ComplexMatrix u = SpectralPropagator(h).unitary(t);
  const auto idx = single_excitation_indices(h.space());
  ComplexMatrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = u(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return out;
}

inline Propagator resolvent_propagator(double phi, double g, double t, double omega0 = 0.0) {
  return {CompositeSpace({4}), resolvent_numeric_block(phi, g, t, omega0), t, PropagatorSource::resolvent};
}

}  // namespace twomode

#endif  // TWOMODE_EVOLUTION_HPP

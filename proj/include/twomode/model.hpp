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

#ifndef TWOMODE_MODEL_HPP
#define TWOMODE_MODEL_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "twomode/field_states.hpp"
#include "twomode/tensor_core.hpp"

namespace twomode {

struct ModelParams {
  double g = 1.0;
  double phi = 0.0;
  double omega0 = 0.0;
  int n_max = 12;
  double eps_trunc = kDefaultTruncEps;
  /// Add omega0 * N to the interaction-picture Hamiltonian.
  bool include_free = false;

  void validate() const {
    if (!(g > 0.0)) throw ConfigError("model: g must be positive");
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw ConfigError("model: phi must lie in [0, 2pi)");
    if (n_max < 1) throw ConfigError("model: n_max must be at least 1");
    if (!(eps_trunc > 0.0)) throw ConfigError("model: eps_trunc must be positive");
  }
};

enum class ModePicture { original, transformed };

/// Local phase on atom 2 relating the conjugated phi = pi Hamiltonian to the
/// double Jaynes-Cummings form. With the mode transform below it is zero.
inline constexpr double kDjcResidualPhase = 0.0;

namespace detail {

inline void require_space(const CompositeSpace& space, int n_max, int modes, const char* who) {
  const CompositeSpace want = modes == 2 ? CompositeSpace::two_atoms_two_modes(n_max)
                                         : CompositeSpace::two_atoms_one_mode(n_max);
  if (!(space == want)) {
    throw DimensionMismatch(std::string(who) + ": expected space " + want.describe() + ", got " + space.describe());
  }
}

/// s^+ a + s^- a^dagger on the given atom and mode factors.
inline SparseMatrix jc_term(const CompositeSpace& space, int atom, int mode, cplx phase = 1.0) {
  const int n_max = static_cast<int>(space.factor_dim(mode)) - 1;
  const SparseMatrix sp = embed(space, atom, sigma_plus());
  const SparseMatrix a = embed(space, mode, annihilation(n_max));
  const SparseMatrix term = phase * (sp * a);
  return term + SparseMatrix(term.adjoint());
}

}  // namespace detail

/// N = s1^+ s1^- + s2^+ s2^- + sum_k a_k^dagger a_k on [2,2,modes...].
inline HermitianOperator excitation_number(const CompositeSpace& space) {
  if (space.num_factors() < 3 || space.factor_dim(kAtom1) != 2 || space.factor_dim(kAtom2) != 2) {
    throw DimensionMismatch("excitation_number: expected [2,2,modes...], got " + space.describe());
  }
  const Index n = space.total_dim();
  std::vector<Eigen::Triplet<cplx>> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    double count = 0.0;
    for (int f = 0; f < space.num_factors(); ++f) {
      const Index d = space.digit(i, f);
      count += f < 2 ? (d == kExcited ? 1.0 : 0.0) : static_cast<double>(d);
    }
    if (count != 0.0) t.emplace_back(i, i, count);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return HermitianOperator(space, std::move(m));
}

/// g (s1^+ a1 + s1^+ a2 + s2^+ a1 + e^{i phi} s2^+ a2 + h.c.), hbar = 1.
inline HermitianOperator build_hamiltonian(const ModelParams& p, const CompositeSpace& space) {
  p.validate();
  detail::require_space(space, p.n_max, 2, "build_hamiltonian");
  SparseMatrix h = detail::jc_term(space, kAtom1, kMode1) + detail::jc_term(space, kAtom1, kMode2) +
                   detail::jc_term(space, kAtom2, kMode1) +
                   detail::jc_term(space, kAtom2, kMode2, std::polar(1.0, p.phi));
  h *= p.g;
  if (p.include_free && p.omega0 != 0.0) h += p.omega0 * excitation_number(space).sparse();
  return HermitianOperator(space, std::move(h));
}

inline HermitianOperator build_hamiltonian(const ModelParams& p) {
  return build_hamiltonian(p, CompositeSpace::two_atoms_two_modes(p.n_max));
}

/// sqrt(2) g (s1^+ A1 + s2^+ A1 + h.c.) on [2,2,n_max+1].
inline HermitianOperator build_tc_hamiltonian(const ModelParams& p, const CompositeSpace& space) {
  p.validate();
  detail::require_space(space, p.n_max, 1, "build_tc_hamiltonian");
  const int mode = 2;
  SparseMatrix h = detail::jc_term(space, kAtom1, mode) + detail::jc_term(space, kAtom2, mode);
  h *= std::sqrt(2.0) * p.g;
  if (p.include_free && p.omega0 != 0.0) h += p.omega0 * excitation_number(space).sparse();
  return HermitianOperator(space, std::move(h));
}

inline HermitianOperator build_tc_hamiltonian(const ModelParams& p) {
  return build_tc_hamiltonian(p, CompositeSpace::two_atoms_one_mode(p.n_max));
}

/// sqrt(2) g (s1^+ A1 + s2^+ A2 + h.c.) on [2,2,n_max+1,n_max+1].
inline HermitianOperator build_djc_hamiltonian(const ModelParams& p, const CompositeSpace& space) {
  p.validate();
  detail::require_space(space, p.n_max, 2, "build_djc_hamiltonian");
  SparseMatrix h = detail::jc_term(space, kAtom1, kMode1) +
                   detail::jc_term(space, kAtom2, kMode2, std::polar(1.0, kDjcResidualPhase));
  h *= std::sqrt(2.0) * p.g;
  if (p.include_free && p.omega0 != 0.0) h += p.omega0 * excitation_number(space).sparse();
  return HermitianOperator(space, std::move(h));
}

inline HermitianOperator build_djc_hamiltonian(const ModelParams& p) {
  return build_djc_hamiltonian(p, CompositeSpace::two_atoms_two_modes(p.n_max));
}

/// Fock-space unitary W on [n_max+1, n_max+1] with W|n,m> = |eta_nm>, so that
/// a1 -> (A1 + A2)/sqrt(2) and a2 -> (A1 - A2)/sqrt(2). Built per photon-number
/// sector as exp(-pi/4 (a1^dag a2 - a2^dag a1)) times the parity (-1)^{n2};
/// unitary on sectors with n + m <= n_max, truncated above.
inline ComplexMatrix beam_splitter_unitary(int n_max) {
  if (n_max < 0) throw ExceedsTruncation("beam_splitter_unitary: n_max must be non-negative");
  const CompositeSpace space = two_mode_space(n_max);
  const Index dim = space.total_dim();
  if (dim > kMaxDenseDim) throw TruncationTooLarge("beam_splitter_unitary: two-mode space too large");
  ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
  for (int s = 0; s <= 2 * n_max; ++s) {
    // Sector basis |k, s-k>, k = 0..s; the generator is real antisymmetric.
    ComplexMatrix gen = ComplexMatrix::Zero(s + 1, s + 1);
    for (int k = 0; k <= s; ++k) {
      if (k < s) gen(k + 1, k) += std::sqrt((k + 1.0) * (s - k));  // a1^dag a2
      if (k > 0) gen(k - 1, k) -= std::sqrt(static_cast<double>(k) * (s - k + 1.0));  // -a2^dag a1
    }
    // exp(theta G) = exp(-i theta (iG)) with iG Hermitian.
    const ComplexMatrix block = unitary_from_hamiltonian(kI * gen, -std::numbers::pi / 4.0);
    for (int kin = 0; kin <= s; ++kin) {
      const int n2in = s - kin;
      if (kin > n_max || n2in > n_max) continue;
      const double parity = (n2in % 2) ? -1.0 : 1.0;
      for (int kout = 0; kout <= s; ++kout) {
        const int n2out = s - kout;
        if (kout > n_max || n2out > n_max) continue;
        w(space.flatten({kout, n2out}), space.flatten({kin, n2in})) = parity * block(kout, kin);
      }
    }
  }
  return w;
}

/// Apply a two-mode operator to the mode factors of a [2,2,M,M] column.
inline ComplexVector apply_on_modes(const ComplexMatrix& w, const ComplexVector& v) {
  const Index mdim = w.rows();
  if (v.size() % mdim != 0) throw DimensionMismatch("apply_on_modes: state does not match operator");
  const Index adim = v.size() / mdim;
  // Row-major flat index = atoms * mdim + modes, so columns of the map are atom blocks.
  const Eigen::Map<const ComplexMatrix> in(v.data(), mdim, adim);
  ComplexVector out(v.size());
  Eigen::Map<ComplexMatrix>(out.data(), mdim, adim) = w * in;
  return out;
}

inline Ensemble apply_on_modes(const ComplexMatrix& w, const Ensemble& state) {
  std::vector<ComplexVector> out;
  out.reserve(state.size());
  for (const auto& s : state.states()) {
    ComplexVector v = apply_on_modes(w, s);
    v /= v.norm();
    out.push_back(std::move(v));
  }
  return Ensemble(state.space(), state.weights(), std::move(out));
}

/// Population pushed past the truncation by the mode transform, summed over
/// the weighted components.
inline double transform_loss(const ComplexMatrix& w, const Ensemble& state) {
  double lost = 0.0;
  for (std::size_t k = 0; k < state.size(); ++k)
    lost += state.weight(k) * std::abs(1.0 - apply_on_modes(w, state.state(k)).squaredNorm());
  return lost;
}

namespace detail {

inline void require_full(const Ensemble& state, const char* who) {
  const auto& d = state.space().factor_dims();
  if (d.size() != 4 || d[0] != 2 || d[1] != 2 || d[2] != d[3]) {
    throw DimensionMismatch(std::string(who) + ": expected [2,2,M,M], got " + state.space().describe());
  }
}

inline void check_transform_loss(double loss, double eps) {
  if (loss > eps) {
    throw TruncationTooSmall("mode transform moves population " + text::format_real(loss) +
                             " beyond the cutoff; raise n_max");
  }
}

}  // namespace detail

/// AC -> DJC: mode transform only.
inline Ensemble map_ac_to_djc(const Ensemble& state, double eps = kDefaultTruncEps) {
  detail::require_full(state, "map_ac_to_djc");
  const ComplexMatrix w = beam_splitter_unitary(state.space().n_max());
  detail::check_transform_loss(transform_loss(w, state), eps);
  return apply_on_modes(w, state);
}

inline StateVector map_ac_to_djc(const StateVector& psi, double eps = kDefaultTruncEps) {
  return map_ac_to_djc(Ensemble(psi), eps).pure_state();
}

/// SC -> TC: mode transform, then trace out the second transformed mode.
/// The result is on [2,2,n_max+1] and carries a factor of rank at most its dimension.
inline DensityMatrix map_sc_to_tc(const Ensemble& state, double eps = kDefaultTruncEps) {
  detail::require_full(state, "map_sc_to_tc");
  const Ensemble mapped = map_ac_to_djc(state, eps);
  const DensityMatrix full = partial_trace(mapped, {kAtom1, kAtom2, kMode1});
  const ComplexMatrix& f = *full.factor();
  if (f.cols() <= f.rows()) return full;
  // Compress the factor to at most dim columns via its Gram eigenvectors.
  const EigenSystem es = hermitian_eigen(full.matrix());
  std::vector<Index> keep;
  for (Index j = 0; j < es.dim(); ++j)
    if (es.values(j) > 1e-15) keep.push_back(j);
  ComplexMatrix w(full.dim(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    w.col(static_cast<Index>(k)) = es.vectors.col(keep[k]) * std::sqrt(es.values(keep[k]));
  w /= std::sqrt(w.squaredNorm());
  return DensityMatrix::from_factor(full.space(), w);
}

inline DensityMatrix map_sc_to_tc(const StateVector& psi, double eps = kDefaultTruncEps) {
  return map_sc_to_tc(Ensemble(psi), eps);
}

/// W (x) atom identities as a full-space sparse matrix.
inline SparseMatrix lift_mode_transform(const ComplexMatrix& w) {
  return kron(sparse_identity(4), SparseMatrix(w.sparseView(0.0, 1e-300)));
}

}  // namespace twomode

#endif  // TWOMODE_MODEL_HPP

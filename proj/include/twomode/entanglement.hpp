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

#ifndef TWOMODE_ENTANGLEMENT_HPP
#define TWOMODE_ENTANGLEMENT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twomode/evolution.hpp"
#include "twomode/tensor_core.hpp"

namespace twomode {

/// Trace and positivity tolerance for measure inputs.
inline constexpr double kStateTol = 1e-8;

namespace detail {

/// sigma_y (x) sigma_y in {ee, eg, ge, gg}; real with entries -1, 1, 1, -1 on the anti-diagonal.
inline ComplexMatrix spin_flip() {
  ComplexMatrix y = ComplexMatrix::Zero(4, 4);
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

inline void check_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionMismatch("concurrence: expected a two-qubit state, got " + rho.space().describe());
  if (std::abs(rho.trace() - 1.0) > kStateTol) throw NotAState("concurrence: trace is not 1");
}

/// C from the singular values of W^T Y W, where rho = W W^dagger: these are
/// the square roots of the eigenvalues of rho (Y rho* Y).
inline double concurrence_from_factor(const ComplexMatrix& w) {
  const ComplexMatrix tau = w.transpose() * spin_flip() * w;
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  RealVector s = svd.singularValues();
  std::sort(s.data(), s.data() + s.size(), std::greater<>());
  double c = s(0);
  for (Index k = 1; k < s.size(); ++k) c -= s(k);
  return std::clamp(c, 0.0, 1.0);
}

}  // namespace detail

/// Wootters concurrence. Uses the stored factor when present, otherwise the
/// eigen-decomposition square root with roundoff clipping.
inline double concurrence(const DensityMatrix& rho) {
  detail::check_two_qubit(rho);
  if (rho.factor()) return detail::concurrence_from_factor(*rho.factor());
  const EigenSystem es = hermitian_eigen(rho.matrix());
  if (es.values.minCoeff() < -kStateTol) throw NotAState("concurrence: density matrix is not positive");
  ComplexMatrix w(4, 4);
  for (Index j = 0; j < 4; ++j) w.col(j) = es.vectors.col(j) * std::sqrt(std::max(0.0, es.values(j)));
  return detail::concurrence_from_factor(w);
}

/// Eigenvalues of rho rho~ in descending order, clipped at zero (direct route).
inline RealVector concurrence_spectrum(const DensityMatrix& rho) {
  detail::check_two_qubit(rho);
  const ComplexMatrix y = detail::spin_flip();
  const ComplexMatrix tilde = y * rho.matrix().conjugate() * y;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(rho.matrix() * tilde, false);
  RealVector lam(4);
  for (Index k = 0; k < 4; ++k) lam(k) = std::max(0.0, solver.eigenvalues()(k).real());
  std::sort(lam.data(), lam.data() + 4, std::greater<>());
  return lam;
}

inline double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

inline double entanglement_of_formation(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw std::domain_error("entanglement_of_formation: concurrence outside [0, 1]");
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

/// (||rho^{T_B}||_1 - 1) / 2 with B the listed factors; floored at 0 within 1e-12.
inline double negativity(const DensityMatrix& rho, std::span<const int> b_factors) {
  if (b_factors.empty()) throw BadFactor("negativity: empty cut");
  const ComplexMatrix pt = partial_transpose(rho.space(), rho.matrix(), b_factors);
  const double n = (trace_norm_hermitian(pt) - 1.0) / 2.0;
  return n < 1e-12 ? 0.0 : n;
}

inline double negativity(const DensityMatrix& rho, std::initializer_list<int> b_factors) {
  return negativity(rho, std::span<const int>(b_factors.begin(), b_factors.size()));
}

/// Negativity of a pure state across (A | B) from its Schmidt coefficients:
/// ((sum_k s_k)^2 - 1) / 2. A is the listed factor set.
inline double negativity_pure(const StateVector& psi, std::span<const int> a_factors) {
  const auto split = detail::split_for_trace(psi.space(), a_factors);
  if (split.traced.size() <= 1 || split.kept.size() <= 1) return 0.0;
  const ComplexMatrix m = detail::reshape_for_trace(split, psi.amplitudes());
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const double s = svd.singularValues().sum();
  const double n = (s * s - 1.0) / 2.0;
  return n < 1e-12 ? 0.0 : n;
}

inline double negativity_pure(const StateVector& psi, std::initializer_list<int> a_factors) {
  return negativity_pure(psi, std::span<const int>(a_factors.begin(), a_factors.size()));
}

// ---------------------------------------------------------------------------
// Closed forms for single-excitation initial states.

/// |eg00>: C = |cos 2K1t - cos 2K2t| / 4.
inline double concurrence_eg00(double phi, double g, double t) {
  return 0.25 * std::abs(std::cos(2.0 * rabi_k1(phi, g) * t) - std::cos(2.0 * rabi_k2(phi, g) * t));
}

/// |gg10>: C = (sin^2 K1t + sin^2 K2t) / 2.
inline double concurrence_gg10(double phi, double g, double t) {
  const double s1 = std::sin(rabi_k1(phi, g) * t), s2 = std::sin(rabi_k2(phi, g) * t);
  return 0.5 * (s1 * s1 + s2 * s2);
}

/// (|eg> + |ge>)|00>/sqrt(2), as published: cos^2(K1t) cos^2(phi/4) + cos^2(K2t) sin^2(phi/4).
inline double concurrence_bell00_as_published(double phi, double g, double t) {
  const double c1 = std::cos(rabi_k1(phi, g) * t), c2 = std::cos(rabi_k2(phi, g) * t);
  const double a = std::cos(phi / 4.0), b = std::sin(phi / 4.0);
  return c1 * c1 * a * a + c2 * c2 * b * b;
}

/// Same expression with K1 and K2 interchanged; reported next to the
/// published one by the audit.
inline double concurrence_bell00_swapped(double phi, double g, double t) {
  const double c1 = std::cos(rabi_k1(phi, g) * t), c2 = std::cos(rabi_k2(phi, g) * t);
  const double a = std::cos(phi / 4.0), b = std::sin(phi / 4.0);
  return c2 * c2 * a * a + c1 * c1 * b * b;
}

/// Published |eg00> death instants m pi / (K1 - K2), m = 1..count, as
/// positive times. Empty when K1 = K2.
inline std::vector<double> eg00_death_times(double phi, double g, int count) {
  const double d = std::abs(rabi_k1(phi, g) - rabi_k2(phi, g));
  std::vector<double> out;
  if (d < 1e-12) return out;
  for (int m = 1; m <= count; ++m) out.push_back(m * std::numbers::pi / d);
  return out;
}

/// Every zero of the |eg00> closed form in (0, t_max]: the published lattice
/// together with the m pi / (K1 + K2) family.
inline std::vector<double> eg00_all_zeros(double phi, double g, double t_max) {
  const double k1 = rabi_k1(phi, g), k2 = rabi_k2(phi, g);
  std::vector<double> out;
  for (double step : {std::abs(k1 - k2), k1 + k2}) {
    if (step < 1e-12) continue;
    for (int m = 1; m * std::numbers::pi / step <= t_max; ++m) out.push_back(m * std::numbers::pi / step);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), out.end());
  return out;
}

enum class LowSqueezeCut { atom_atom, field_field };

/// Small-squeezing negativity approximations for ee + tmss(xi) in the DJC
/// picture: atom-atom |min(s1^2 c1^2 - xi s1^2 c2^2, 0)| and field-field
/// |min(s1^2 c1^2 - xi c1^2 c2^2, 0)|, with s1 = sin(sqrt2 g t),
/// c1 = cos(sqrt2 g t), c2 = cos(2 g t). xi is the real squeezing parameter.
inline double negativity_lowsqueeze_approx(double xi, double g, double t, LowSqueezeCut cut) {
  if (std::abs(xi) > 0.2) throw OutOfValidity("negativity_lowsqueeze_approx: |xi| must be at most 0.2");
  const double s1 = std::sin(std::sqrt(2.0) * g * t), c1 = std::cos(std::sqrt(2.0) * g * t);
  const double c2 = std::cos(2.0 * g * t);
  const double v = cut == LowSqueezeCut::atom_atom ? s1 * s1 * c1 * c1 - xi * s1 * s1 * c2 * c2
                                                   : s1 * s1 * c1 * c1 - xi * c1 * c1 * c2 * c2;
  return std::abs(std::min(v, 0.0));
}

enum class CutKind { atom_atom, field_field, subsystem_pair };

inline std::string to_string(CutKind c) {
  switch (c) {
    case CutKind::atom_atom: return "atom-atom";
    case CutKind::field_field: return "field-field";
    case CutKind::subsystem_pair: return "subsystem-pair";
  }
  return "?";
}

inline CutKind parse_cut(std::string_view s) {
  const std::string l = text::lower(text::trim(s));
  if (l == "atom-atom" || l == "atoms") return CutKind::atom_atom;
  if (l == "field-field" || l == "modes") return CutKind::field_field;
  if (l == "subsystem-pair" || l == "pair") return CutKind::subsystem_pair;
  throw ConfigError("unknown cut '" + std::string(s) + "' (expected atom-atom, field-field, subsystem-pair)");
}

struct EntanglementSample {
  double t = 0.0;
  double concurrence = 0.0;
  std::optional<double> negativity;
  CutKind cut = CutKind::atom_atom;
};

/// Negativity of an evolved ensemble across a named cut on [2,2,M,M] (or
/// [2,2,M] for the atom-atom cut).
inline double negativity_across(const Ensemble& state, CutKind cut) {
  switch (cut) {
    case CutKind::atom_atom: return negativity(atomic_reduced(state), {1});
    case CutKind::field_field: {
      if (state.space().num_factors() != 4) throw BadFactor("field-field cut needs two modes");
      const DensityMatrix f = partial_trace(state, {kMode1, kMode2});
      const DensityMatrix compact = DensityMatrix::from_factor(f.space(), detail::compress_factor(*f.factor()));
      return negativity(compact, {1});
    }
    case CutKind::subsystem_pair: {
      if (state.space().num_factors() != 4) throw BadFactor("subsystem-pair cut needs two modes");
      if (state.is_pure()) return negativity_pure(state.pure_state(), {kAtom1, kMode1});
      if (state.space().total_dim() > kMaxDenseDim) throw TruncationTooLarge("negativity: mixed state too large");
      return negativity(state.density(), {kAtom2, kMode2});
    }
  }
  throw BadFactor("negativity: unknown cut");
}

}  // namespace twomode

#endif  // TWOMODE_ENTANGLEMENT_HPP

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

#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"
#include "twomode/entanglement.hpp"

namespace twomode {
namespace {

using std::numbers::pi;

const CompositeSpace kQubits({2, 2});

// Wootters through the eigenvalues of sqrt(rho) rho~ sqrt(rho). Taking square
// roots of eigenvalues costs ~sqrt(eps) on rank-deficient inputs.
double wootters_oracle(const ComplexMatrix& rho) {
  ComplexMatrix y = ComplexMatrix::Zero(4, 4);
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
  const ComplexMatrix sq =
      es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  const ComplexMatrix m = sq * y * rho.conjugate() * y * sq;
  RealVector ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(0.5 * (m + m.adjoint())).eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(ev.data(), ev.data() + 4, std::greater<>());
  return std::max(0.0, ev(0) - ev(1) - ev(2) - ev(3));
}

DensityMatrix werner(double p) {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix m = p * psi * psi.adjoint() + (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
  return DensityMatrix(kQubits, m);
}

TEST(Concurrence, BellAndProductStates) {
  const DensityMatrix bell = DensityMatrix::pure(StateVector(kQubits, atomic_state(AtomicLabel::Phi).vector));
  EXPECT_NEAR(concurrence(bell), 1.0, 1e-14);
  EXPECT_NEAR(negativity(bell, {1}), 0.5, 1e-14);
  const DensityMatrix prod = DensityMatrix::pure(StateVector(kQubits, atomic_state(AtomicLabel::eg).vector));
  EXPECT_NEAR(concurrence(prod), 0.0, 1e-15);
  EXPECT_EQ(negativity(prod, {1}), 0.0);
}

TEST(Concurrence, WernerFamily) {
  EXPECT_NEAR(concurrence(werner(0.5)), 0.25, 1e-14);
  EXPECT_NEAR(negativity(werner(0.5), {1}), 0.125, 1e-14);
  EXPECT_EQ(concurrence(werner(1.0 / 3.0 - 1e-3)), 0.0);
  EXPECT_EQ(negativity(werner(1.0 / 3.0 - 1e-3), {1}), 0.0);
}

TEST(Concurrence, EntanglementOfFormationFrozen) {
  EXPECT_NEAR(entanglement_of_formation(0.6), 0.4689955935892812, 1e-15);
  EXPECT_NEAR(entanglement_of_formation(1.0), 1.0, 1e-15);
  EXPECT_EQ(entanglement_of_formation(0.0), 0.0);
  EXPECT_THROW(entanglement_of_formation(1.2), std::domain_error);
}

TEST(Concurrence, MatchesWoottersOracleOnRandomStates) {
  for (int k = 0; k < 40; ++k) {
    const DensityMatrix rho = testing::random_density(kQubits, 1 + k % 4);
    const double oracle = wootters_oracle(rho.matrix());
    const double tol = k % 4 == 3 ? 1e-10 : 1e-7;
    EXPECT_NEAR(concurrence(rho), oracle, tol) << k;
    // Dense route (no stored factor).
    EXPECT_NEAR(concurrence(DensityMatrix(kQubits, rho.matrix())), oracle, tol) << k;
    const RealVector lam = concurrence_spectrum(rho);
    const double direct = std::max(0.0, std::sqrt(lam(0)) - std::sqrt(lam(1)) - std::sqrt(lam(2)) - std::sqrt(lam(3)));
    EXPECT_NEAR(direct, oracle, 1e-6) << k;
  }
}

TEST(Concurrence, LocalUnitaryInvariance) {
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix rho = testing::random_density(kQubits, 2);
    const ComplexMatrix u = kron(testing::random_unitary(2), testing::random_unitary(2));
    const DensityMatrix moved(kQubits, u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(concurrence(moved), concurrence(rho), 1e-10);
    EXPECT_NEAR(negativity(moved, {1}), negativity(rho, {1}), 1e-10);
  }
}

TEST(Concurrence, XStateClosedForm) {
  for (int k = 0; k < 50; ++k) {
    RealVector d(4);
    for (int i = 0; i < 4; ++i) d(i) = testing::uniform(0.01, 1.0);
    d /= d.sum();
    const cplx z23 = std::polar(testing::uniform() * std::sqrt(d(1) * d(2)), testing::uniform(0.0, 2 * pi));
    const cplx z14 = std::polar(testing::uniform() * std::sqrt(d(0) * d(3)), testing::uniform(0.0, 2 * pi));
    ComplexMatrix m = d.cast<cplx>().asDiagonal();
    m(1, 2) = z23;
    m(2, 1) = std::conj(z23);
    m(0, 3) = z14;
    m(3, 0) = std::conj(z14);
    const double want =
        2.0 * std::max({0.0, std::abs(z23) - std::sqrt(d(0) * d(3)), std::abs(z14) - std::sqrt(d(1) * d(2))});
    EXPECT_NEAR(concurrence(DensityMatrix(kQubits, m)), want, 1e-10) << k;
  }
}

TEST(Negativity, PositiveExactlyWhenConcurrencePositive) {
  int entangled = 0, separable = 0;
  for (int k = 0; k < 200; ++k) {
    const ComplexVector psi = testing::random_vector(4);
    const double p = testing::uniform();
    const ComplexMatrix m = p * psi * psi.adjoint() + (1.0 - p) / 4.0 * ComplexMatrix::Identity(4, 4);
    const DensityMatrix rho(kQubits, m);
    const double c = concurrence(rho), n = negativity(rho, {1});
    if (c > 1e-9 || n > 1e-9) {
      ++entangled;
      EXPECT_GT(c, 0.0) << k;
      EXPECT_GT(n, 0.0) << k;
    } else {
      ++separable;
    }
  }
  EXPECT_GT(entangled, 10);
  EXPECT_GT(separable, 10);
}

TEST(Negativity, PureStateRouteMatchesPartialTranspose) {
  const CompositeSpace s({2, 2, 3, 3});
  for (int k = 0; k < 5; ++k) {
    const StateVector psi(s, testing::random_vector(s.total_dim()));
    const DensityMatrix rho = DensityMatrix::pure(psi);
    EXPECT_NEAR(negativity_pure(psi, {kAtom1, kMode1}), negativity(rho, {kAtom2, kMode2}), 1e-10);
    EXPECT_NEAR(negativity_pure(psi, {kAtom1}), negativity(rho, {kAtom1}), 1e-10);
  }
}

TEST(Negativity, ProductStatesHaveNoneAcrossAnyCut) {
  const CompositeSpace s({2, 2, 3, 3});
  for (int k = 0; k < 5; ++k) {
    ComplexVector v = testing::random_vector(2);
    for (Index d : {2, 3, 3}) {
      const ComplexVector part = testing::random_vector(d);
      v = kron(ComplexMatrix(v), ComplexMatrix(part)).col(0);
    }
    const DensityMatrix rho = DensityMatrix::pure(StateVector(s, v));
    for (const std::vector<int>& cut : {std::vector<int>{0}, {1}, {2}, {3}, {0, 2}, {1, 3}, {0, 1}})
      EXPECT_EQ(negativity(rho, std::span<const int>(cut)), 0.0);
  }
}

TEST(ClosedForms, SingleExcitationStatesMatchNumerics) {
  for (int i = 0; i < 8; ++i) {
    const double phi = i * 2.0 * pi / 8.0;
    ModelParams p;
    p.phi = phi;
    p.n_max = 1;
    const HermitianOperator h = build_hamiltonian(p);
    const Ensemble eg(StateVector::basis(h.space(), {kExcited, kGround, 0, 0}));
    const Ensemble gg(StateVector::basis(h.space(), {kGround, kGround, 1, 0}));
    const Trajectory te(h, eg), tg(h, gg);
    for (int k = 0; k < 50; ++k) {
      const double t = 0.2 * k;
      EXPECT_NEAR(concurrence(te.atomic_state(t)), concurrence_eg00(phi, 1.0, t), 1e-10) << phi << " " << t;
      EXPECT_NEAR(concurrence(tg.atomic_state(t)), concurrence_gg10(phi, 1.0, t), 1e-10) << phi << " " << t;
    }
  }
}

TEST(ClosedForms, SymmetricBellStateFollowsSwappedRates) {
  double printed_worst = 0.0;
  for (double phi : {0.5, 1.5, 2.5}) {
    ModelParams p;
    p.phi = phi;
    p.n_max = 1;
    const HermitianOperator h = build_hamiltonian(p);
    ComplexVector v = ComplexVector::Zero(h.dim());
    v(h.space().flatten({kExcited, kGround, 0, 0})) = v(h.space().flatten({kGround, kExcited, 0, 0})) = 1.0 / std::sqrt(2.0);
    const Trajectory traj(h, Ensemble(StateVector(h.space(), v)));
    for (int k = 0; k < 40; ++k) {
      const double t = 0.25 * k;
      const double c = concurrence(traj.atomic_state(t));
      EXPECT_NEAR(c, concurrence_bell00_swapped(phi, 1.0, t), 1e-10);
      printed_worst = std::max(printed_worst, std::abs(c - concurrence_bell00_as_published(phi, 1.0, t)));
    }
  }
  EXPECT_GT(printed_worst, 0.1);
}

TEST(ClosedForms, DeathLatticeIsSubsetOfZeros) {
  for (double phi : {0.3, 1.0, 2.5}) {
    const auto lattice = eg00_death_times(phi, 1.0, 4);
    const auto zeros = eg00_all_zeros(phi, 1.0, lattice.back() + 1.0);
    for (double t : lattice) {
      EXPECT_NEAR(concurrence_eg00(phi, 1.0, t), 0.0, 1e-12);
      EXPECT_TRUE(std::any_of(zeros.begin(), zeros.end(), [&](double z) { return std::abs(z - t) < 1e-9; }));
    }
    for (double z : zeros) EXPECT_NEAR(concurrence_eg00(phi, 1.0, z), 0.0, 1e-12);
    EXPECT_GT(zeros.size(), lattice.size());
  }
  EXPECT_TRUE(eg00_death_times(pi, 1.0, 3).empty());
}

TEST(ClosedForms, LowSqueezeApproximationRange) {
  EXPECT_NO_THROW(negativity_lowsqueeze_approx(0.2, 1.0, 1.0, LowSqueezeCut::atom_atom));
  EXPECT_THROW(negativity_lowsqueeze_approx(0.21, 1.0, 1.0, LowSqueezeCut::field_field), OutOfValidity);
  EXPECT_EQ(negativity_lowsqueeze_approx(0.0, 1.0, 0.7, LowSqueezeCut::atom_atom), 0.0);
}

TEST(Cuts, NamesRoundTrip) {
  for (CutKind c : {CutKind::atom_atom, CutKind::field_field, CutKind::subsystem_pair})
    EXPECT_EQ(parse_cut(to_string(c)), c);
  EXPECT_THROW(parse_cut("left-right"), ConfigError);
}

TEST(Cuts, RejectInvalidInputs) {
  const DensityMatrix three = DensityMatrix::pure(StateVector::basis(CompositeSpace({2, 3}), {0, 0}));
  EXPECT_THROW(concurrence(three), DimensionMismatch);
  const Ensemble tc(StateVector::basis(CompositeSpace::two_atoms_one_mode(2), {kExcited, kGround, 0}));
  EXPECT_THROW(negativity_across(tc, CutKind::field_field), BadFactor);
  EXPECT_EQ(negativity_across(tc, CutKind::atom_atom), 0.0);
}

}  // namespace
}  // namespace twomode

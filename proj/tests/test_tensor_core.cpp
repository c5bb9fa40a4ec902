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

#include "support.hpp"
#include "twomode/tensor_core.hpp"
#include "twomode/text.hpp"

namespace twomode {
namespace {

using testing::random_density;
using testing::random_unitary;
using testing::random_vector;

TEST(CompositeSpace, FlattenIsRowMajor) {
  const CompositeSpace s({2, 2, 4, 4});
  EXPECT_EQ(s.total_dim(), 64);
  EXPECT_EQ(s.flatten({0, 0, 0, 1}), 1);
  EXPECT_EQ(s.flatten({0, 0, 1, 0}), 4);
  EXPECT_EQ(s.flatten({0, 1, 0, 0}), 16);
  EXPECT_EQ(s.flatten({1, 0, 0, 0}), 32);
  for (Index i = 0; i < s.total_dim(); ++i) {
    const auto m = s.unflatten(i);
    EXPECT_EQ(s.flatten(m), i);
    for (int k = 0; k < 4; ++k) EXPECT_EQ(s.digit(i, k), m[static_cast<std::size_t>(k)]);
  }
}

TEST(CompositeSpace, RejectsBadIndices) {
  const CompositeSpace s({2, 3});
  EXPECT_THROW(s.flatten({2, 0}), BadFactor);
  EXPECT_THROW(s.flatten({0}), BadFactor);
  EXPECT_THROW(s.unflatten(6), BadFactor);
  EXPECT_THROW(CompositeSpace({2, 0}), BadFactor);
  EXPECT_THROW(CompositeSpace(std::vector<Index>{}), BadFactor);
  EXPECT_THROW(CompositeSpace({300, 300}), TruncationTooLarge);
}

TEST(Operators, AnnihilationMatrixElements) {
  const ComplexMatrix a(annihilation(4));
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) {
      const double expected = (m == n + 1) ? std::sqrt(static_cast<double>(m)) : 0.0;
      EXPECT_DOUBLE_EQ(a(n, m).real(), expected);
      EXPECT_EQ(a(n, m).imag(), 0.0);
    }
  // [a, a^dagger] = 1 except at the cutoff.
  const ComplexMatrix c = a * a.adjoint() - a.adjoint() * a;
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(c(n, n).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(4, 4).real(), -4.0, 1e-14);
}

TEST(Operators, SigmaPlusRaisesGroundToExcited) {
  const ComplexMatrix sp(sigma_plus());
  // |e> = 0, |g> = 1.
  EXPECT_EQ(sp(kExcited, kGround), cplx(1.0));
  EXPECT_EQ(sp.cwiseAbs().sum(), 1.0);
}

TEST(Operators, EmbeddedFactorsCommute) {
  const CompositeSpace s({2, 2, 3, 3});
  const SparseMatrix a1 = embed(s, 2, annihilation(2));
  const SparseMatrix a2 = embed(s, 3, annihilation(2));
  const SparseMatrix s1 = embed(s, 0, sigma_plus());
  EXPECT_LT(commutator_norm(a1, a2), 1e-15);
  EXPECT_LT(commutator_norm(a1, s1), 1e-15);
  EXPECT_THROW(embed(s, 2, annihilation(3)), DimensionMismatch);
}

TEST(StateVector, ValidatesNormAndDimension) {
  const CompositeSpace s({2, 2});
  EXPECT_THROW(StateVector(s, ComplexVector::Ones(4)), NotAState);
  EXPECT_THROW(StateVector(s, ComplexVector::Ones(3) / std::sqrt(3.0)), DimensionMismatch);
  EXPECT_NO_THROW(StateVector::normalized(s, ComplexVector::Ones(4)));
  EXPECT_THROW(StateVector::normalized(s, ComplexVector::Zero(4)), NotAState);
}

TEST(DensityMatrix, RejectsNonStates) {
  const CompositeSpace s({2});
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(DensityMatrix(s, m), NotAState);
  m(0, 1) = 0.3;
  m /= 2.0;
  EXPECT_THROW(DensityMatrix(s, m), NotAState);
}

TEST(PartialTrace, ProductStateFactorsOut) {
  const CompositeSpace a({2}), b({3});
  const ComplexVector va = random_vector(2), vb = random_vector(3);
  const ComplexVector v = kron(ComplexMatrix(va), ComplexMatrix(vb));
  const StateVector psi(CompositeSpace({2, 3}), v);
  const DensityMatrix ra = partial_trace(psi, {0});
  const DensityMatrix rb = partial_trace(psi, {1});
  EXPECT_LT(max_abs(ra.matrix() - va * va.adjoint()), 1e-14);
  EXPECT_LT(max_abs(rb.matrix() - vb * vb.adjoint()), 1e-14);
}

TEST(PartialTrace, DensityAndFactorRoutesAgree) {
  const CompositeSpace s({2, 2, 3});
  const DensityMatrix rho = random_density(s, 3);
  const DensityMatrix dense(s, rho.matrix());  // no factor
  for (const auto& keep : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
    const DensityMatrix r1 = partial_trace(rho, keep);
    const DensityMatrix r2 = partial_trace(dense, keep);
    EXPECT_LT(max_abs(r1.matrix() - r2.matrix()), 1e-13);
    EXPECT_NEAR(r1.trace(), 1.0, 1e-13);
  }
}

TEST(PartialTrace, OrderOfKeepListDoesNotMatter) {
  const CompositeSpace s({2, 3, 2});
  const DensityMatrix rho = random_density(s, 2);
  const DensityMatrix r1 = partial_trace(rho, {0, 2});
  const DensityMatrix r2 = partial_trace(rho, {2, 0});
  EXPECT_LT(max_abs(r1.matrix() - r2.matrix()), 1e-15);
  EXPECT_THROW(partial_trace(rho, {3}), BadFactor);
}

TEST(PartialTrace, InvariantUnderUnitaryOnTracedFactor) {
  const CompositeSpace s({2, 3});
  const DensityMatrix rho = random_density(s, 2);
  const ComplexMatrix u = kron(ComplexMatrix::Identity(2, 2), random_unitary(3));
  const DensityMatrix rotated(s, u * rho.matrix() * u.adjoint());
  EXPECT_LT(max_abs(partial_trace(rho, {0}).matrix() - partial_trace(rotated, {0}).matrix()), 1e-13);
}

TEST(PartialTranspose, MatchesElementDefinition) {
  const CompositeSpace s({2, 3});
  const DensityMatrix rho = random_density(s, 2);
  const ComplexMatrix pt = partial_transpose(rho, 1);
  for (Index j = 0; j < 2; ++j)
    for (Index k = 0; k < 3; ++k)
      for (Index l = 0; l < 2; ++l)
        for (Index q = 0; q < 3; ++q) {
          EXPECT_EQ(pt(s.flatten({j, k}), s.flatten({l, q})), rho(s.flatten({j, q}), s.flatten({l, k})));
        }
  // Transposing both factors is the full transpose.
  const int both[] = {0, 1};
  EXPECT_LT(max_abs(partial_transpose(s, rho.matrix(), both) - rho.matrix().transpose()), 1e-15);
}

TEST(Ensemble, FactorRoundTrip) {
  const CompositeSpace s({2, 2});
  const DensityMatrix rho = random_density(s, 3);
  const Ensemble e = Ensemble::from_density(rho);
  EXPECT_LT(max_abs(e.density().matrix() - rho.matrix()), 1e-14);
  const DensityMatrix no_factor(s, rho.matrix());
  EXPECT_LT(max_abs(Ensemble::from_density(no_factor).density().matrix() - rho.matrix()), 1e-13);
  EXPECT_THROW(Ensemble(s, {0.5, 0.6}, {random_vector(4), random_vector(4)}), NotAState);
}

TEST(Linalg, KronShapeAndGuard) {
  const ComplexMatrix a = ComplexMatrix::Identity(2, 2), b = ComplexMatrix::Identity(3, 3);
  EXPECT_EQ(kron(a, b).rows(), 6);
  EXPECT_THROW(kron(a, b, 5), TruncationTooLarge);
}

TEST(Linalg, EigenPropagatorMatchesExpm) {
  ComplexMatrix h = testing::random_matrix(6, 6);
  h = 0.5 * (h + h.adjoint()).eval();
  EXPECT_LT(max_abs(unitary_from_hamiltonian(h, 0.7) - testing::expm_propagator(h, 0.7)), 1e-12);
  EXPECT_LT(unitarity_defect(unitary_from_hamiltonian(h, 3.0)), 1e-13);
  ComplexMatrix nh = h;
  nh(0, 1) += 1.0;
  EXPECT_THROW(hermitian_eigen(nh), NotHermitian);
}

TEST(Linalg, TraceNormOfHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.diagonal() << 1.0, -2.0, 0.5;
  EXPECT_DOUBLE_EQ(trace_norm_hermitian(m), 3.5);
}

TEST(Text, RealsRoundTripAtSeventeenDigits) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0}) {
    const auto back = text::parse_real(text::format_real(x));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, x);
  }
  EXPECT_FALSE(text::parse_real("1.0x").has_value());
  EXPECT_FALSE(text::parse_real("").has_value());
}

TEST(Text, ComplexParsing) {
  EXPECT_EQ(*text::parse_complex("0.5"), cplx(0.5, 0.0));
  EXPECT_EQ(*text::parse_complex("0.5i"), cplx(0.0, 0.5));
  EXPECT_EQ(*text::parse_complex("1-2i"), cplx(1.0, -2.0));
  EXPECT_EQ(*text::parse_complex("1e-3+4i"), cplx(1e-3, 4.0));
  EXPECT_EQ(*text::parse_complex("-i"), cplx(0.0, -1.0));
  const cplx z(0.1, -0.7);
  EXPECT_EQ(*text::parse_complex(text::format_complex(z)), z);
  EXPECT_FALSE(text::parse_complex("abc").has_value());
}

}  // namespace
}  // namespace twomode

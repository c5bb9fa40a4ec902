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

// Shared oracles for the test suites: seeded random states and a matrix
// exponential that does not go through the library's eigensolver path.

#ifndef TWOMODE_TESTS_SUPPORT_HPP
#define TWOMODE_TESTS_SUPPORT_HPP

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "twomode/linalg.hpp"
#include "twomode/states.hpp"

namespace twomode::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 r(20260418);
  return r;
}

inline double uniform(double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline ComplexVector random_vector(Index n) {
  std::normal_distribution<double> d;
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = cplx(d(rng()), d(rng()));
  return v / v.norm();
}

inline ComplexMatrix random_matrix(Index r, Index c) {
  std::normal_distribution<double> d;
  ComplexMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = cplx(d(rng()), d(rng()));
  return m;
}

/// Haar-ish unitary from the QR of a Gaussian matrix.
inline ComplexMatrix random_unitary(Index n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, n));
  return qr.householderQ();
}

/// Random mixed state of the given rank.
inline DensityMatrix random_density(const CompositeSpace& space, Index rank) {
  ComplexMatrix w = random_matrix(space.total_dim(), rank);
  w /= std::sqrt(w.squaredNorm());
  return DensityMatrix::from_factor(space, w);
}

/// exp(-i H t) by Pade scaling and squaring.
inline ComplexMatrix expm_propagator(const ComplexMatrix& h, double t) {
  const ComplexMatrix a = (-kI * t) * h;
  return a.exp();
}

}  // namespace twomode::testing

#endif  // TWOMODE_TESTS_SUPPORT_HPP

// Copyright 2026 The Twirl Authors
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

#include "twirl/random_matrices.hpp"

#include <cmath>

namespace twirl {

ComplexMatrix random_ginibre(Index rows, Index cols, RandomStream& stream) {
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = stream.normal(0.0, 1.0);
      const double im = stream.normal(0.0, 1.0);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix random_hermitian(Index d, RandomStream& stream, double norm) {
  const ComplexMatrix g = random_ginibre(d, d, stream);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  const double current = spectral_norm(h);
  if (current > 0.0) h *= norm / current;
  // Restore exact Hermiticity after scaling.
  return 0.5 * (h + h.adjoint());
}

ComplexMatrix random_unitary(Index d, RandomStream& stream) {
  const ComplexMatrix g = random_ginibre(d, d, stream);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

DensityMatrix random_density(Index d, RandomStream& stream) {
  const ComplexMatrix g = random_ginibre(d, d, stream);
  ComplexMatrix rho = g * g.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

}  // namespace twirl

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

#pragma once

#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace twirl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative tolerance for Hermiticity and reconstruction checks.
inline constexpr double kHermitianTolerance = 1e-10;

/// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kDegeneracyGap = 1e-12;

/// H = U diag(eigenvalues) U^dagger with eigenvalues ascending.
///
/// Each eigenvector column is phase-fixed so that its largest-magnitude
/// component (lowest index on ties) is real and positive.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index dim() const { return eigenvalues.size(); }
};

double max_abs_entry(const ComplexMatrix& a);

/// max_{jk} |A_jk - conj(A_kj)|; throws ShapeError on non-square input.
double hermiticity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double rel_tol = kHermitianTolerance);

/// Throws ShapeError for non-square input and SymmetryError when the
/// Hermiticity defect exceeds kHermitianTolerance * max(1, max|A_jk|).
SpectralDecomposition eig_hermitian(const ComplexMatrix& a);

/// Row-major vectorization: vec(|i><j|) = |i>|j>, i.e. vec(B)[i*cols + j] = B(i, j).
/// With this convention (A0 kron A1) vec(B) = vec(A0 B A1^T).
ComplexVector vec(const ComplexMatrix& b);

/// Inverse of vec for square d x d matrices.
ComplexMatrix unvec(const ComplexVector& v, Index d);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of singular values of a square matrix.
double trace_norm(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// U diag(f(lambda)) U^dagger for a complex-valued scalar function f.
template <typename F>
ComplexMatrix apply_spectral_function(const SpectralDecomposition& spec, F&& f) {
  const Index d = spec.dim();
  ComplexVector diag(d);
  for (Index j = 0; j < d; ++j) diag(j) = f(spec.eigenvalues(j));
  return spec.eigenvectors * diag.asDiagonal() * spec.eigenvectors.adjoint();
}

/// e^{-iHs}.
ComplexMatrix unitary_propagator(const SpectralDecomposition& spec, double s);

/// Hermitian operator with its spectral decomposition computed once at
/// construction. Copies share the decomposition.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return *spectrum_; }
  std::shared_ptr<const SpectralDecomposition> shared_spectrum() const { return spectrum_; }
  const RealVector& eigenvalues() const { return spectrum_->eigenvalues; }
  const ComplexMatrix& eigenvectors() const { return spectrum_->eigenvectors; }
  Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::shared_ptr<const SpectralDecomposition> spectrum_;
};

}  // namespace twirl

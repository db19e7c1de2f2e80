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

#include "twirl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

#include "twirl/errors.hpp"

namespace twirl {
namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
    throw ShapeError(os.str());
  }
}

void canonicalize_phase(ComplexMatrix& vectors) {
  for (Index c = 0; c < vectors.cols(); ++c) {
    Index pivot = 0;
    double best = -1.0;
    for (Index r = 0; r < vectors.rows(); ++r) {
      // Prefer the lowest index among near-equal magnitudes.
      const double mag = std::abs(vectors(r, c));
      if (mag > best * (1.0 + 1e-12) + 1e-300) {
        best = mag;
        pivot = r;
      }
    }
    if (best <= 0.0) continue;
    const Complex phase = std::conj(vectors(pivot, c)) / best;
    vectors.col(c) *= phase;
    vectors(pivot, c) = Complex(std::abs(vectors(pivot, c)), 0.0);
  }
}

}  // namespace

double max_abs_entry(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& a) {
  require_square(a, "hermiticity_defect");
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  return hermiticity_defect(a) <= rel_tol * std::max(1.0, max_abs_entry(a));
}

SpectralDecomposition eig_hermitian(const ComplexMatrix& a) {
  require_square(a, "eig_hermitian");
  if (a.rows() == 0) throw ShapeError("eig_hermitian: dimension must be at least 1");
  const double defect = hermiticity_defect(a);
  const double scale = std::max(1.0, max_abs_entry(a));
  if (defect > kHermitianTolerance * scale) {
    std::ostringstream os;
    os << "eig_hermitian: matrix is not Hermitian (max |A - A^dagger| = " << defect << ")";
    throw SymmetryError(os.str());
  }
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver did not converge");
  }
  SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  canonicalize_phase(out.eigenvectors);
  return out;
}

ComplexVector vec(const ComplexMatrix& b) {
  ComplexVector v(b.size());
  const Index cols = b.cols();
  for (Index i = 0; i < b.rows(); ++i)
    for (Index j = 0; j < cols; ++j) v(i * cols + j) = b(i, j);
  return v;
}

ComplexMatrix unvec(const ComplexVector& v, Index d) {
  if (d < 0 || v.size() != d * d) {
    std::ostringstream os;
    os << "unvec: vector of length " << v.size() << " cannot be reshaped to " << d << "x" << d;
    throw ShapeError(os.str());
  }
  ComplexMatrix b(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) b(i, j) = v(i * d + j);
  return b;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

double trace_norm(const ComplexMatrix& a) {
  require_square(a, "trace_norm");
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues().sum();
}

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(a);
  return svd.singularValues()(0);
}

ComplexMatrix unitary_propagator(const SpectralDecomposition& spec, double s) {
  return apply_spectral_function(spec, [s](double lambda) {
    return std::polar(1.0, -lambda * s);
  });
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix)
    : matrix_(std::move(matrix)),
      spectrum_(std::make_shared<const SpectralDecomposition>(eig_hermitian(matrix_))) {}

}  // namespace twirl

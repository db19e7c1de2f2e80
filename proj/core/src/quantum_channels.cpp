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

#include "twirl/quantum_channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twirl/errors.hpp"

namespace twirl {
namespace {

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

void require_same_dim(Index a, Index b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw ShapeError(os.str());
  }
}

Index superoperator_dim(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw ShapeError(os.str());
  }
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  if (d * d != m.rows()) {
    std::ostringstream os;
    os << what << ": side " << m.rows() << " is not a perfect square";
    throw ShapeError(os.str());
  }
  return d;
}

}  // namespace

StateCheck check_state(const ComplexMatrix& rho) {
  StateCheck c;
  if (rho.rows() != rho.cols() || rho.rows() == 0) return c;
  c.hermiticity_defect = hermiticity_defect(rho);
  c.trace_error = std::abs(rho.trace() - Complex(1.0, 0.0));
  c.min_eigenvalue = min_hermitian_eigenvalue(rho);
  c.valid = c.hermiticity_defect <= kHermitianTolerance && c.trace_error <= kHermitianTolerance &&
            c.min_eigenvalue >= -kHermitianTolerance;
  return c;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)), certified_(true) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    std::ostringstream os;
    os << "DensityMatrix: expected a nonempty square matrix, got " << rho_.rows() << "x" << rho_.cols();
    throw ShapeError(os.str());
  }
  const StateCheck c = check_state(rho_);
  if (!c.valid) {
    std::ostringstream os;
    os << "DensityMatrix: not a valid state (hermiticity defect " << c.hermiticity_defect
       << ", trace error " << c.trace_error << ", min eigenvalue " << c.min_eigenvalue << ")";
    throw DomainError(os.str());
  }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix rho) { return DensityMatrix(std::move(rho), false); }

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw DomainError("DensityMatrix::pure: zero vector");
  const ComplexVector unit = psi / norm;
  return DensityMatrix(unit * unit.adjoint());
}

DensityMatrix DensityMatrix::basis(Index d, Index k) {
  if (d < 1 || k < 0 || k >= d) {
    std::ostringstream os;
    os << "DensityMatrix::basis: index " << k << " out of range for dimension " << d;
    throw DomainError(os.str());
  }
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(k, k) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::plus_all(Index d) {
  if (d < 1) throw DomainError("DensityMatrix::plus_all: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0)));
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  if (d < 1) throw DomainError("DensityMatrix::maximally_mixed: dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix make_channel_output(ComplexMatrix rho, bool certified) {
  return DensityMatrix(std::move(rho), certified);
}

SchurMultiplier::SchurMultiplier(std::shared_ptr<const SpectralDecomposition> basis, ComplexMatrix multiplier)
    : basis_(std::move(basis)), multiplier_(std::move(multiplier)) {
  if (!basis_) throw ShapeError("SchurMultiplier: missing eigenbasis");
  if (multiplier_.rows() != multiplier_.cols()) throw ShapeError("SchurMultiplier: multiplier must be square");
  require_same_dim(basis_->dim(), multiplier_.rows(), "SchurMultiplier");
}

CptpReport cptp_check(const ComplexMatrix& multiplier, double psd_tolerance, double tp_tolerance) {
  if (multiplier.rows() != multiplier.cols()) throw ShapeError("cptp_check: multiplier must be square");
  CptpReport r;
  r.min_eigenvalue = min_hermitian_eigenvalue(multiplier);
  r.max_diag_deviation = 0.0;
  for (Index j = 0; j < multiplier.rows(); ++j) {
    r.max_diag_deviation = std::max(r.max_diag_deviation, std::abs(multiplier(j, j) - Complex(1.0, 0.0)));
  }
  // A non-Hermitian multiplier cannot map Hermitian inputs to Hermitian outputs.
  const bool symmetric = multiplier.size() == 0 || hermiticity_defect(multiplier) <= 1e-12;
  r.is_cp = symmetric && r.min_eigenvalue >= -psd_tolerance;
  r.is_tp = r.max_diag_deviation <= tp_tolerance;
  return r;
}

CptpReport cptp_check(const SchurMultiplier& m, double psd_tolerance, double tp_tolerance) {
  return cptp_check(m.matrix(), psd_tolerance, tp_tolerance);
}

DensityMatrix apply_schur(const SchurMultiplier& m, const DensityMatrix& rho) {
  require_same_dim(m.dim(), rho.dim(), "apply_schur");
  const ComplexMatrix& v = m.eigenbasis();
  const ComplexMatrix in_basis = v.adjoint() * rho.matrix() * v;
  const ComplexMatrix out = v * m.matrix().cwiseProduct(in_basis) * v.adjoint();
  return make_channel_output(out, rho.certified() && cptp_check(m).ok());
}

SuperoperatorMatrix::SuperoperatorMatrix(ComplexMatrix matrix)
    : dim_(superoperator_dim(matrix, "SuperoperatorMatrix")), matrix_(std::move(matrix)) {}

SuperoperatorMatrix SuperoperatorMatrix::identity(Index d) {
  return SuperoperatorMatrix(ComplexMatrix::Identity(d * d, d * d));
}

SuperoperatorMatrix SuperoperatorMatrix::unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw ShapeError("SuperoperatorMatrix::unitary: expected a square matrix");
  return SuperoperatorMatrix(kron(u, u.conjugate()));
}

SuperoperatorMatrix SuperoperatorMatrix::of_schur(const SchurMultiplier& m) {
  const ComplexMatrix& v = m.eigenbasis();
  const ComplexMatrix w = kron(v, v.conjugate());
  return SuperoperatorMatrix(w * vec(m.matrix()).asDiagonal() * w.adjoint());
}

ComplexMatrix SuperoperatorMatrix::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ShapeError("SuperoperatorMatrix::apply: dimension mismatch");
  return unvec(matrix_ * vec(rho), dim_);
}

SuperoperatorMatrix SuperoperatorMatrix::compose(const SuperoperatorMatrix& other) const {
  require_same_dim(dim_, other.dim_, "SuperoperatorMatrix::compose");
  return SuperoperatorMatrix(matrix_ * other.matrix_);
}

ChoiMatrix::ChoiMatrix(ComplexMatrix matrix)
    : dim_(superoperator_dim(matrix, "ChoiMatrix")), matrix_(std::move(matrix)) {}

ComplexMatrix ChoiMatrix::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ShapeError("ChoiMatrix::apply: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j) {
      const Complex r = rho(i, j);
      if (r == Complex(0.0, 0.0)) continue;
      out += r * matrix_.block(i * dim_, j * dim_, dim_, dim_);
    }
  return out;
}

ComplexMatrix ChoiMatrix::partial_trace_output() const {
  ComplexMatrix out(dim_, dim_);
  for (Index i = 0; i < dim_; ++i)
    for (Index j = 0; j < dim_; ++j) out(i, j) = matrix_.block(i * dim_, j * dim_, dim_, dim_).trace();
  return out;
}

ChoiReport choi_check(const ChoiMatrix& j, double psd_tolerance, double tp_tolerance) {
  ChoiReport r;
  r.min_eigenvalue = min_hermitian_eigenvalue(j.matrix());
  const ComplexMatrix pt = j.partial_trace_output();
  r.partial_trace_deviation = max_abs_entry(pt - ComplexMatrix::Identity(j.dim(), j.dim()));
  r.is_cp = hermiticity_defect(j.matrix()) <= 1e-10 && r.min_eigenvalue >= -psd_tolerance;
  r.is_tp = r.partial_trace_deviation <= tp_tolerance;
  return r;
}

ChoiMatrix choi_of_superoperator(const SuperoperatorMatrix& s) {
  const Index d = s.dim();
  const ComplexMatrix& m = s.matrix();
  ComplexMatrix j(d * d, d * d);
  // J[(i,a),(k,b)] = Phi(|i><k|)_{ab} = S[a*d+b, i*d+k]
  for (Index i = 0; i < d; ++i)
    for (Index a = 0; a < d; ++a)
      for (Index k = 0; k < d; ++k)
        for (Index b = 0; b < d; ++b) j(i * d + a, k * d + b) = m(a * d + b, i * d + k);
  return ChoiMatrix(std::move(j));
}

ChoiMatrix choi_of_schur(const SchurMultiplier& m) {
  return choi_of_superoperator(SuperoperatorMatrix::of_schur(m));
}

ChoiMatrix choi_of_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw ShapeError("choi_of_unitary: expected a square matrix");
  // J = |w><w| with w[(i,a)] = U_{ai}.
  const ComplexVector w = vec(u.transpose());
  return ChoiMatrix(w * w.adjoint());
}

double choi_trace_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "choi_trace_distance");
  return trace_norm(a.matrix() - b.matrix());
}

double state_trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "state_trace_distance");
  return 0.5 * trace_norm(a.matrix() - b.matrix());
}

}  // namespace twirl

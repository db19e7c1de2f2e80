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

#include <memory>

#include "twirl/linalg.hpp"

namespace twirl {

/// PSD tolerance for Monte-Carlo assembled objects.
inline constexpr double kStatisticalPsdTolerance = 1e-9;
/// PSD tolerance for exactly computed objects.
inline constexpr double kExactPsdTolerance = 1e-10;
/// Trace-preservation tolerance on Schur multiplier diagonals.
inline constexpr double kTraceTolerance = 1e-10;

struct StateCheck {
  double hermiticity_defect = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool valid = false;
};

/// Hermiticity, trace and positivity diagnostics at 1e-10.
StateCheck check_state(const ComplexMatrix& rho);

/// A density operator. The checked constructor enforces Hermiticity, unit
/// trace and positivity within 1e-10; `unchecked` is for outputs of maps
/// that are not certified CPTP and marks the result uncertified.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix unchecked(ComplexMatrix rho);
  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis(Index d, Index k);
  /// Uniform superposition over all d basis states (|+>^n for d = 2^n).
  static DensityMatrix plus_all(Index d);
  static DensityMatrix maximally_mixed(Index d);

  const ComplexMatrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }
  bool certified() const { return certified_; }

 private:
  DensityMatrix(ComplexMatrix rho, bool certified) : rho_(std::move(rho)), certified_(certified) {}
  friend DensityMatrix make_channel_output(ComplexMatrix rho, bool certified);

  ComplexMatrix rho_;
  bool certified_ = true;
};

/// Wraps a map output without re-running the eigenvalue check; `certified`
/// records whether the producing map was a certified channel.
DensityMatrix make_channel_output(ComplexMatrix rho, bool certified);

/// The matrix [m(lambda_j - lambda_k)] applied entrywise in the eigenbasis.
class SchurMultiplier {
 public:
  SchurMultiplier(std::shared_ptr<const SpectralDecomposition> basis, ComplexMatrix multiplier);

  Index dim() const { return multiplier_.rows(); }
  const ComplexMatrix& matrix() const { return multiplier_; }
  const ComplexMatrix& eigenbasis() const { return basis_->eigenvectors; }
  const SpectralDecomposition& spectrum() const { return *basis_; }
  std::shared_ptr<const SpectralDecomposition> shared_spectrum() const { return basis_; }

 private:
  std::shared_ptr<const SpectralDecomposition> basis_;
  ComplexMatrix multiplier_;
};

struct CptpReport {
  bool is_cp = false;
  bool is_tp = false;
  double min_eigenvalue = 0.0;
  double max_diag_deviation = 0.0;

  bool ok() const { return is_cp && is_tp; }
};

/// Schur maps are CP iff the multiplier is PSD and TP iff its diagonal is all ones.
CptpReport cptp_check(const ComplexMatrix& multiplier,
                      double psd_tolerance = kStatisticalPsdTolerance,
                      double tp_tolerance = kTraceTolerance);
CptpReport cptp_check(const SchurMultiplier& m,
                      double psd_tolerance = kStatisticalPsdTolerance,
                      double tp_tolerance = kTraceTolerance);

/// Rotates rho into the eigenbasis, multiplies entrywise, rotates back.
/// The result is marked uncertified when the multiplier fails cptp_check.
DensityMatrix apply_schur(const SchurMultiplier& m, const DensityMatrix& rho);

/// d^2 x d^2 matrix acting on the row-major vec of a d x d operator.
class SuperoperatorMatrix {
 public:
  explicit SuperoperatorMatrix(ComplexMatrix matrix);

  static SuperoperatorMatrix identity(Index d);
  /// rho -> U rho U^dagger, i.e. U kron conj(U).
  static SuperoperatorMatrix unitary(const ComplexMatrix& u);
  static SuperoperatorMatrix of_schur(const SchurMultiplier& m);

  Index dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// (this o other)(rho) = this(other(rho)).
  SuperoperatorMatrix compose(const SuperoperatorMatrix& other) const;

 private:
  Index dim_;
  ComplexMatrix matrix_;
};

/// Unnormalized Choi matrix J = sum_ij |i><j| kron Phi(|i><j|); trace d for TP maps.
class ChoiMatrix {
 public:
  explicit ChoiMatrix(ComplexMatrix matrix);

  Index dim() const { return dim_; }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Phi(rho)_{ab} = sum_ij rho_ij J[(i,a),(j,b)].
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// Tr over the output factor; the identity for trace-preserving maps.
  ComplexMatrix partial_trace_output() const;

 private:
  Index dim_;
  ComplexMatrix matrix_;
};

struct ChoiReport {
  bool is_cp = false;
  bool is_tp = false;
  double min_eigenvalue = 0.0;
  double partial_trace_deviation = 0.0;
};

ChoiReport choi_check(const ChoiMatrix& j,
                      double psd_tolerance = kStatisticalPsdTolerance,
                      double tp_tolerance = 1e-8);

ChoiMatrix choi_of_superoperator(const SuperoperatorMatrix& s);
ChoiMatrix choi_of_schur(const SchurMultiplier& m);
/// Rank-one Choi matrix of rho -> U rho U^dagger.
ChoiMatrix choi_of_unitary(const ComplexMatrix& u);

/// trace_norm(a - b). Bounds the diamond distance D as value/d <= D <= value.
double choi_trace_distance(const ChoiMatrix& a, const ChoiMatrix& b);

/// (1/2) trace_norm(a - b).
double state_trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace twirl

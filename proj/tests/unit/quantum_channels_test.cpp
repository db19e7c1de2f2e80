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

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "twirl/errors.hpp"
#include "twirl/quantum_channels.hpp"
#include "twirl/random_matrices.hpp"

namespace twirl {
namespace {

using oracle::max_abs;
using oracle::pauli_z;

SchurMultiplier multiplier_for(const ComplexMatrix& h, const ComplexMatrix& m) {
  return SchurMultiplier(std::make_shared<const SpectralDecomposition>(eig_hermitian(h)), m);
}

ComplexMatrix z_offdiag_multiplier(Complex off) {
  ComplexMatrix m(2, 2);
  m << 1, off, std::conj(off), 1;
  return m;
}

ComplexMatrix dephase_z(const ComplexMatrix& rho) {
  ComplexMatrix out = rho;
  out(0, 1) = out(1, 0) = 0.0;
  return out;
}

TEST(DensityMatrix, Validation) {
  EXPECT_NO_THROW(DensityMatrix(oracle::plus_state()));
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Zero(2, 3)), ShapeError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2)), DomainError);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{negative}, DomainError);
  ComplexMatrix skew = oracle::plus_state();
  skew(0, 1) = Complex(0.5, 0.1);
  EXPECT_THROW(DensityMatrix{skew}, DomainError);
}

TEST(DensityMatrix, Presets) {
  EXPECT_LE(max_abs(DensityMatrix::plus_all(2).matrix() - oracle::plus_state()), 1e-15);
  EXPECT_LE(max_abs(DensityMatrix::maximally_mixed(4).matrix() - 0.25 * ComplexMatrix::Identity(4, 4)), 0.0);
  EXPECT_EQ(DensityMatrix::basis(3, 2).matrix()(2, 2), Complex(1.0));
}

TEST(ApplySchur, AllOnesIsIdentity) {
  for (int trial = 0; trial < 50; ++trial) {
    RandomStream stream(5, trial, StreamPurpose::kTest);
    const ComplexMatrix h = random_hermitian(3, stream);
    const DensityMatrix rho = random_density(3, stream);
    const DensityMatrix out = apply_schur(multiplier_for(h, ComplexMatrix::Ones(3, 3)), rho);
    EXPECT_LE(max_abs(out.matrix() - rho.matrix()), 1e-14);
    EXPECT_TRUE(out.certified());
  }
}

TEST(ApplySchur, CompleteDephasing) {
  RandomStream stream(6, 0, StreamPurpose::kTest);
  const DensityMatrix rho = random_density(2, stream);
  const DensityMatrix out = apply_schur(multiplier_for(pauli_z(), ComplexMatrix::Identity(2, 2)), rho);
  EXPECT_LE(max_abs(out.matrix() - dephase_z(rho.matrix())), 1e-15);
}

TEST(ApplySchur, GaussianOffDiagonalOnPlus) {
  const DensityMatrix out =
      apply_schur(multiplier_for(pauli_z(), z_offdiag_multiplier(std::exp(-2.0))), DensityMatrix::plus_all(2));
  EXPECT_NEAR(std::abs(out.matrix()(0, 1)), 0.5 * std::exp(-2.0), 1e-15);
  EXPECT_NEAR(std::abs(out.matrix()(0, 1)), 0.067668, 5e-7);
}

TEST(ApplySchur, PreservesHermiticityAndTrace) {
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream stream(8, trial, StreamPurpose::kTest);
    const ComplexMatrix h = random_hermitian(4, stream);
    const DensityMatrix rho = random_density(4, stream);
    ComplexMatrix m = ComplexMatrix::Ones(4, 4);
    for (Index j = 0; j < 4; ++j)
      for (Index k = j + 1; k < 4; ++k) {
        m(j, k) = Complex(stream.uniform() - 0.5, stream.uniform() - 0.5);
        m(k, j) = std::conj(m(j, k));
      }
    const ComplexMatrix out = apply_schur(multiplier_for(h, m), rho).matrix();
    EXPECT_LE(hermiticity_defect(out), 1e-12);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
  }
}

TEST(ApplySchur, FaultyMultiplierIsFlaggedButComputed) {
  ComplexMatrix m = ComplexMatrix::Ones(2, 2);
  m(0, 0) = 0.9;
  const DensityMatrix out = apply_schur(multiplier_for(pauli_z(), m), DensityMatrix::plus_all(2));
  EXPECT_FALSE(out.certified());
  EXPECT_NEAR(out.matrix().trace().real(), 0.95, 1e-15);
  EXPECT_THROW(apply_schur(multiplier_for(pauli_z(), m), DensityMatrix::maximally_mixed(3)), ShapeError);
}

TEST(CptpCheck, Examples) {
  const CptpReport ones = cptp_check(ComplexMatrix::Ones(3, 3));
  EXPECT_TRUE(ones.is_cp);
  EXPECT_TRUE(ones.is_tp);
  ComplexMatrix bad = ComplexMatrix::Ones(2, 2);
  bad(1, 1) = 0.9;
  const CptpReport r = cptp_check(bad);
  EXPECT_FALSE(r.is_tp);
  EXPECT_NEAR(r.max_diag_deviation, 0.1, 1e-15);
  ComplexMatrix not_psd = ComplexMatrix::Ones(2, 2);
  not_psd(0, 1) = not_psd(1, 0) = 2.0;
  EXPECT_FALSE(cptp_check(not_psd).is_cp);
}

TEST(CptpCheck, GaussianGramMatricesPass) {
  for (int trial = 0; trial < 100; ++trial) {
    RandomStream stream(10, trial, StreamPurpose::kTest);
    const Index d = 2 + trial % 7;
    RealVector lambda(d);
    for (Index j = 0; j < d; ++j) lambda(j) = 4.0 * (stream.uniform() - 0.5);
    const double t = 3.0 * stream.uniform();
    ComplexMatrix m(d, d);
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) m(j, k) = std::exp(-t * std::pow(lambda(j) - lambda(k), 2) / 2.0);
    const CptpReport r = cptp_check(m);
    EXPECT_TRUE(r.ok()) << "trial " << trial << " min eig " << r.min_eigenvalue;
  }
}

TEST(Superoperator, UnitaryAndComposition) {
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream stream(11, trial, StreamPurpose::kTest);
    const ComplexMatrix u = random_unitary(3, stream);
    const ComplexMatrix v = random_unitary(3, stream);
    const DensityMatrix rho = random_density(3, stream);
    const SuperoperatorMatrix su = SuperoperatorMatrix::unitary(u);
    const SuperoperatorMatrix sv = SuperoperatorMatrix::unitary(v);
    EXPECT_LE(max_abs(su.apply(rho.matrix()) - u * rho.matrix() * u.adjoint()), 1e-14);
    EXPECT_LE(max_abs(su.compose(sv).matrix() - su.matrix() * sv.matrix()), 1e-10);
    EXPECT_LE(max_abs(su.compose(sv).apply(rho.matrix()) - su.apply(sv.apply(rho.matrix()))), 1e-12);
  }
}

TEST(Superoperator, OfSchurMatchesApply) {
  RandomStream stream(12, 0, StreamPurpose::kTest);
  const ComplexMatrix h = random_hermitian(3, stream);
  ComplexMatrix m(3, 3);
  const SpectralDecomposition s = eig_hermitian(h);
  for (Index j = 0; j < 3; ++j)
    for (Index k = 0; k < 3; ++k) m(j, k) = std::exp(-0.4 * std::pow(s.eigenvalues(j) - s.eigenvalues(k), 2));
  const SchurMultiplier sm = multiplier_for(h, m);
  const DensityMatrix rho = random_density(3, stream);
  EXPECT_LE(max_abs(SuperoperatorMatrix::of_schur(sm).apply(rho.matrix()) - apply_schur(sm, rho).matrix()), 1e-13);
}

TEST(Choi, IdentitySuperoperator) {
  const ChoiMatrix j = choi_of_superoperator(SuperoperatorMatrix::identity(2));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (Index a : {0, 3})
    for (Index b : {0, 3}) expected(a, b) = 1.0;
  EXPECT_TRUE(j.matrix() == expected);
}

TEST(Choi, ZConjugationNegatesOffBlocks) {
  const ChoiMatrix j = choi_of_superoperator(SuperoperatorMatrix::unitary(pauli_z()));
  const ComplexMatrix expected =
      oracle::choi_by_definition(2, [](const ComplexMatrix& x) { return ComplexMatrix(pauli_z() * x * pauli_z()); });
  EXPECT_LE(max_abs(j.matrix() - expected), 1e-15);
  EXPECT_EQ(j.matrix()(0, 3), Complex(-1.0));
  EXPECT_LE(max_abs(choi_of_unitary(pauli_z()).matrix() - expected), 1e-15);
}

TEST(Choi, RandomUnitaryAgreesWithDefinition) {
  RandomStream stream(13, 0, StreamPurpose::kTest);
  const ComplexMatrix u = random_unitary(3, stream);
  const ComplexMatrix expected =
      oracle::choi_by_definition(3, [&](const ComplexMatrix& x) { return ComplexMatrix(u * x * u.adjoint()); });
  EXPECT_LE(max_abs(choi_of_unitary(u).matrix() - expected), 1e-14);
  EXPECT_LE(max_abs(choi_of_superoperator(SuperoperatorMatrix::unitary(u)).matrix() - expected), 1e-14);
  const ChoiReport r = choi_check(choi_of_unitary(u));
  EXPECT_TRUE(r.is_cp);
  EXPECT_TRUE(r.is_tp);
}

TEST(Choi, CompleteDephasingIsDiagonal) {
  const SchurMultiplier sm = multiplier_for(pauli_z(), ComplexMatrix::Identity(2, 2));
  const ChoiMatrix j = choi_of_schur(sm);
  ComplexMatrix off = j.matrix();
  off.diagonal().setZero();
  EXPECT_LE(max_abs(off), 1e-15);
  EXPECT_LE(max_abs(j.matrix() - oracle::choi_by_definition(2, dephase_z)), 1e-15);
  EXPECT_LE(max_abs(j.partial_trace_output() - ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(ChoiDistance, Examples) {
  const ChoiMatrix id = choi_of_superoperator(SuperoperatorMatrix::identity(2));
  const ChoiMatrix deph = choi_of_schur(multiplier_for(pauli_z(), ComplexMatrix::Identity(2, 2)));
  EXPECT_DOUBLE_EQ(choi_trace_distance(id, id), 0.0);
  EXPECT_NEAR(choi_trace_distance(id, deph), 2.0, 1e-14);
}

TEST(ChoiDistance, TriangleInequality) {
  for (int trial = 0; trial < 20; ++trial) {
    RandomStream stream(14, trial, StreamPurpose::kTest);
    const ChoiMatrix a = choi_of_unitary(random_unitary(2, stream));
    const ChoiMatrix b = choi_of_unitary(random_unitary(2, stream));
    const ChoiMatrix c = choi_of_unitary(random_unitary(2, stream));
    EXPECT_LE(choi_trace_distance(a, c), choi_trace_distance(a, b) + choi_trace_distance(b, c) + 1e-9);
  }
}

TEST(StateDistance, Examples) {
  const DensityMatrix plus = DensityMatrix::plus_all(2);
  EXPECT_DOUBLE_EQ(state_trace_distance(plus, plus), 0.0);
  EXPECT_NEAR(state_trace_distance(DensityMatrix::basis(2, 0), DensityMatrix::basis(2, 1)), 1.0, 1e-15);
  const DensityMatrix deph = apply_schur(multiplier_for(pauli_z(), z_offdiag_multiplier(std::exp(-2.0))), plus);
  // The difference is 0.5 (1 - e^{-2}) X, whose trace norm is (1 - e^{-2}).
  const double expected = 0.5 * oracle::trace_norm_hermitian(plus.matrix() - deph.matrix());
  EXPECT_NEAR(state_trace_distance(plus, deph), expected, 1e-15);
  EXPECT_NEAR(state_trace_distance(plus, deph), (1.0 - std::exp(-2.0)) / 2.0, 1e-15);
  EXPECT_NEAR(state_trace_distance(plus, deph), 0.432332, 5e-7);
  EXPECT_THROW(state_trace_distance(plus, DensityMatrix::maximally_mixed(3)), ShapeError);
}

}  // namespace
}  // namespace twirl

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

#include <span>

#include "twirl/distributions.hpp"
#include "twirl/linalg.hpp"
#include "twirl/quantum_channels.hpp"

namespace twirl {

/// Multiplier [f(lambda_j - lambda_k)] in the eigenbasis of `h`.
template <typename F>
SchurMultiplier gap_multiplier(const HermitianOperator& h, F&& f) {
  const RealVector& lambda = h.eigenvalues();
  const Index d = h.dim();
  ComplexMatrix m(d, d);
  for (Index j = 0; j < d; ++j) {
    m(j, j) = f(0.0);
    for (Index k = j + 1; k < d; ++k) {
      m(j, k) = f(lambda(j) - lambda(k));
      // Every admissible law gives char(-w) = conj(char(w)); storing the
      // conjugate keeps the multiplier exactly Hermitian.
      m(k, j) = std::conj(m(j, k));
    }
  }
  return SchurMultiplier(h.shared_spectrum(), std::move(m));
}

/// Phi_{H,D}(rho) = E_{s~D}[e^{-iHs} rho e^{iHs}], held as its Schur multiplier.
class TwirlChannel {
 public:
  TwirlChannel(HermitianOperator hamiltonian, DistributionSpec dist, SchurMultiplier multiplier)
      : hamiltonian_(std::move(hamiltonian)), dist_(std::move(dist)), multiplier_(std::move(multiplier)) {}

  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const DistributionSpec& distribution() const { return dist_; }
  const SchurMultiplier& multiplier() const { return multiplier_; }
  Index dim() const { return hamiltonian_.dim(); }

  DensityMatrix apply(const DensityMatrix& rho) const { return apply_schur(multiplier_, rho); }
  SuperoperatorMatrix superoperator() const { return SuperoperatorMatrix::of_schur(multiplier_); }
  ChoiMatrix choi() const { return choi_of_schur(multiplier_); }

 private:
  HermitianOperator hamiltonian_;
  DistributionSpec dist_;
  SchurMultiplier multiplier_;
};

/// Validates `dist` and assembles m_jk = char_minus(dist)(lambda_j - lambda_k).
TwirlChannel exact_channel(const HermitianOperator& h, const DistributionSpec& dist);

/// e^{tL} rho for L(rho) = H rho H - {H^2, rho}/2, via the Gaussian twirl with variance t.
DensityMatrix gaussian_evolution(const HermitianOperator& h, const DensityMatrix& rho, double t);

/// exp(-t K^2 / 2) with K = H kron I - I kron H^T, built from the spectral
/// decomposition of the Hermitian matrix K (no Schur-basis shortcut).
SuperoperatorMatrix vectorized_propagator(const HermitianOperator& h, double t);

/// unvec(exp(-K^2 t/2) vec(rho)); independent of gaussian_evolution.
DensityMatrix vectorized_oracle(const HermitianOperator& h, const DensityMatrix& rho, double t);

/// Schur multiplier exp(t psi(lambda_j - lambda_k)).
DensityMatrix levy_evolution(const HermitianOperator& h, const LevyTriplet& triplet, const DensityMatrix& rho,
                             double t);

/// e^{tL} rho for L(rho) = E_{s~base}[e^{-iHs} rho e^{iHs}] - rho; `t` is rate times time.
DensityMatrix compound_poisson_evolution(const HermitianOperator& h, const CompoundBase& base,
                                         const DensityMatrix& rho, double t);

/// Generator E_{s~base}[U_s kron conj(U_s)] - I of the compound-Poisson semigroup.
SuperoperatorMatrix compound_poisson_generator(const HermitianOperator& h, const CompoundBase& base);

/// Max entrywise deviation between the Gauss-Hermite evaluation of
/// (2 pi t)^{-1/2} int e^{-s^2/2t} e^{-iHs} ds and the spectral exp(-H^2 t/2).
double hs_quadrature_check(const HermitianOperator& h, double t, int nodes);

/// Commutator norm above which two jump operators are rejected.
inline constexpr double kCommutationTolerance = 1e-10;

/// Gaussian twirls applied one jump operator after another. Throws
/// PreconditionError naming the first non-commuting pair.
DensityMatrix sequential_choi_commuting(std::span<const HermitianOperator> hs, const DensityMatrix& rho, double t);

/// exp(t sum_k -K_k^2/2) applied to vec(rho).
DensityMatrix joint_vectorized_oracle(std::span<const HermitianOperator> hs, const DensityMatrix& rho, double t);

}  // namespace twirl

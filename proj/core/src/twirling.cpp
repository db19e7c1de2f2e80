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

#include "twirl/twirling.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "twirl/errors.hpp"
#include "twirl/quadrature.hpp"

namespace twirl {
namespace {

void require_time(double t, const char* what) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << what << ": time must be finite and nonnegative, got " << t;
    throw DomainError(os.str());
  }
}

void require_same_dim(const HermitianOperator& h, const DensityMatrix& rho, const char* what) {
  if (h.dim() != rho.dim()) {
    std::ostringstream os;
    os << what << ": Hamiltonian has dimension " << h.dim() << " but state has dimension " << rho.dim();
    throw ShapeError(os.str());
  }
}

ComplexMatrix liouville_k(const HermitianOperator& h) {
  const Index d = h.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  return kron(h.matrix(), id) - kron(id, h.matrix().transpose());
}

}  // namespace

TwirlChannel exact_channel(const HermitianOperator& h, const DistributionSpec& dist) {
  validate(dist);
  SchurMultiplier m = gap_multiplier(h, [&dist](double omega) { return char_minus(dist, omega); });
  return TwirlChannel(h, dist, std::move(m));
}

DensityMatrix gaussian_evolution(const HermitianOperator& h, const DensityMatrix& rho, double t) {
  require_time(t, "gaussian_evolution");
  require_same_dim(h, rho, "gaussian_evolution");
  if (t == 0.0) return rho;
  return exact_channel(h, Gaussian{t}).apply(rho);
}

SuperoperatorMatrix vectorized_propagator(const HermitianOperator& h, double t) {
  require_time(t, "vectorized_propagator");
  const SpectralDecomposition k = eig_hermitian(liouville_k(h));
  return SuperoperatorMatrix(
      apply_spectral_function(k, [t](double kappa) { return Complex(std::exp(-0.5 * t * kappa * kappa), 0.0); }));
}

DensityMatrix vectorized_oracle(const HermitianOperator& h, const DensityMatrix& rho, double t) {
  require_time(t, "vectorized_oracle");
  require_same_dim(h, rho, "vectorized_oracle");
  return make_channel_output(vectorized_propagator(h, t).apply(rho.matrix()), rho.certified());
}

DensityMatrix levy_evolution(const HermitianOperator& h, const LevyTriplet& triplet, const DensityMatrix& rho,
                             double t) {
  require_time(t, "levy_evolution");
  require_same_dim(h, rho, "levy_evolution");
  validate(DistributionSpec{triplet});
  if (t == 0.0) return rho;
  const SchurMultiplier m =
      gap_multiplier(h, [&triplet, t](double omega) { return std::exp(t * levy_psi(triplet, omega)); });
  return apply_schur(m, rho);
}

DensityMatrix compound_poisson_evolution(const HermitianOperator& h, const CompoundBase& base,
                                         const DensityMatrix& rho, double t) {
  require_time(t, "compound_poisson_evolution");
  require_same_dim(h, rho, "compound_poisson_evolution");
  validate_base(base);
  if (t == 0.0) return rho;
  return exact_channel(h, CompoundPoisson{t, base}).apply(rho);
}

SuperoperatorMatrix compound_poisson_generator(const HermitianOperator& h, const CompoundBase& base) {
  validate_base(base);
  const Index d = h.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
  auto kicks = [&](const std::vector<Atom>& atoms) {
    ComplexMatrix mean = ComplexMatrix::Zero(d * d, d * d);
    for (const Atom& a : atoms) {
      mean += a.probability * SuperoperatorMatrix::unitary(unitary_propagator(h.spectrum(), a.s)).matrix();
    }
    return mean;
  };
  ComplexMatrix mean;
  if (const auto* dirac = std::get_if<Dirac>(&base)) {
    mean = kicks({Atom{dirac->s0, 1.0}});
  } else if (const auto* mix = std::get_if<FiniteMixture>(&base)) {
    mean = kicks(mix->atoms);
  } else {
    mean = vectorized_propagator(h, std::get<Gaussian>(base).variance).matrix();
  }
  return SuperoperatorMatrix(mean - id);
}

double hs_quadrature_check(const HermitianOperator& h, double t, int nodes) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("hs_quadrature_check: t must be positive");
  if (nodes < 16) throw DomainError("hs_quadrature_check: at least 16 nodes required");
  const QuadratureRule rule = gauss_hermite(nodes);
  // s = sqrt(2t) x turns the N(0, t) average into a Gauss-Hermite sum.
  const double scale = std::sqrt(2.0 * t);
  const Index d = h.dim();
  ComplexMatrix approx = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    approx += rule.weights[i] * unitary_propagator(h.spectrum(), scale * rule.nodes[i]);
  }
  approx /= std::sqrt(std::numbers::pi);
  const ComplexMatrix target = apply_spectral_function(
      h.spectrum(), [t](double lambda) { return Complex(std::exp(-0.5 * t * lambda * lambda), 0.0); });
  return max_abs_entry(approx - target);
}

DensityMatrix sequential_choi_commuting(std::span<const HermitianOperator> hs, const DensityMatrix& rho, double t) {
  require_time(t, "sequential_choi_commuting");
  if (hs.empty()) throw PreconditionError("sequential_choi_commuting: no jump operators");
  for (std::size_t a = 0; a < hs.size(); ++a) {
    require_same_dim(hs[a], rho, "sequential_choi_commuting");
    for (std::size_t b = a + 1; b < hs.size(); ++b) {
      const ComplexMatrix comm = hs[a].matrix() * hs[b].matrix() - hs[b].matrix() * hs[a].matrix();
      const double norm = spectral_norm(comm);
      if (norm > kCommutationTolerance) {
        std::ostringstream os;
        os << "sequential_choi_commuting: jump operators " << a << " and " << b
           << " do not commute (||[H_a, H_b]|| = " << norm << ")";
        throw PreconditionError(os.str());
      }
    }
  }
  DensityMatrix state = rho;
  for (const HermitianOperator& h : hs) state = gaussian_evolution(h, state, t);
  return state;
}

DensityMatrix joint_vectorized_oracle(std::span<const HermitianOperator> hs, const DensityMatrix& rho, double t) {
  require_time(t, "joint_vectorized_oracle");
  if (hs.empty()) throw PreconditionError("joint_vectorized_oracle: no jump operators");
  const Index d = rho.dim();
  ComplexMatrix generator = ComplexMatrix::Zero(d * d, d * d);
  for (const HermitianOperator& h : hs) {
    require_same_dim(h, rho, "joint_vectorized_oracle");
    const ComplexMatrix k = liouville_k(h);
    generator -= 0.5 * k * k;
  }
  const SpectralDecomposition g = eig_hermitian(0.5 * (generator + generator.adjoint()));
  const SuperoperatorMatrix prop(
      apply_spectral_function(g, [t](double mu) { return Complex(std::exp(t * mu), 0.0); }));
  return make_channel_output(prop.apply(rho.matrix()), rho.certified());
}

}  // namespace twirl

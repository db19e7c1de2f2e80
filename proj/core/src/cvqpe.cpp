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

#include "twirl/cvqpe.hpp"

#include <cmath>
#include <sstream>

#include "twirl/errors.hpp"

namespace twirl {

double sample_k(double lambda0, double t, RandomStream& stream) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("sample_k: t must be positive");
  return stream.normal(-lambda0, std::sqrt(0.25 / t));
}

QpeRun estimate_lambda(const HermitianOperator& h, Index eigen_index, double t, std::uint64_t shots,
                       std::uint64_t seed) {
  if (eigen_index < 0 || eigen_index >= h.dim()) {
    std::ostringstream os;
    os << "estimate_lambda: eigen index " << eigen_index << " out of range for dimension " << h.dim();
    throw PreconditionError(os.str());
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("estimate_lambda: t must be positive");
  if (shots < 2) throw PreconditionError("estimate_lambda: at least 2 shots are required for a standard error");

  QpeRun run;
  run.t = t;
  run.true_lambda = h.eigenvalues()(eigen_index);
  run.samples.resize(shots);
  RandomStream stream(seed, static_cast<std::uint64_t>(eigen_index), StreamPurpose::kPhaseEstimation);
  double sum = 0.0;
  for (std::uint64_t i = 0; i < shots; ++i) {
    run.samples[i] = sample_k(run.true_lambda, t, stream);
    sum += run.samples[i];
  }
  const double m = static_cast<double>(shots);
  run.raw_mean = sum / m;
  double ss = 0.0;
  for (double k : run.samples) ss += (k - run.raw_mean) * (k - run.raw_mean);
  run.stderr_ = std::sqrt(ss / (m - 1.0)) / std::sqrt(m);
  run.estimate = -run.raw_mean;
  return run;
}

std::vector<QpeRun> resolve_spectrum(const HermitianOperator& h, double t, std::uint64_t shots, std::uint64_t seed) {
  std::vector<QpeRun> runs;
  runs.reserve(static_cast<std::size_t>(h.dim()));
  for (Index j = 0; j < h.dim(); ++j) runs.push_back(estimate_lambda(h, j, t, shots, seed));
  return runs;
}

bool resolved(const QpeRun& a, const QpeRun& b, double sigmas) {
  return a.upper(sigmas) < b.lower(sigmas) || b.upper(sigmas) < a.lower(sigmas);
}

double sample_k_for_state(const HermitianOperator& h, const ComplexVector& psi, double t, RandomStream& stream,
                          ReadoutLaw law) {
  if (psi.size() != h.dim()) throw ShapeError("sample_k_for_state: state dimension differs from Hamiltonian");
  const double norm = psi.norm();
  if (norm == 0.0) throw DomainError("sample_k_for_state: zero state vector");
  const RealVector weights = (h.eigenvectors().adjoint() * (psi / norm)).cwiseAbs2();
  if (law == ReadoutLaw::kEigenstateOnly) {
    Index top = 0;
    weights.maxCoeff(&top);
    // The eigenstate may lie anywhere inside a degenerate cluster.
    double cluster = 0.0;
    for (Index j = 0; j < h.dim(); ++j)
      if (std::abs(h.eigenvalues()(j) - h.eigenvalues()(top)) < kDegeneracyGap) cluster += weights(j);
    if (cluster < 1.0 - 1e-10) {
      throw PreconditionError(
          "sample_k_for_state: input is not an eigenstate; request ReadoutLaw::kDerivedMixture explicitly");
    }
    return sample_k(h.eigenvalues()(top), t, stream);
  }
  const double u = stream.uniform();
  double cdf = 0.0;
  Index chosen = h.dim() - 1;
  for (Index j = 0; j < h.dim(); ++j) {
    cdf += weights(j);
    if (u < cdf) {
      chosen = j;
      break;
    }
  }
  return sample_k(h.eigenvalues()(chosen), t, stream);
}

}  // namespace twirl

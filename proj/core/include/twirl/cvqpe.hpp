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

#include <cstdint>
#include <vector>

#include "twirl/linalg.hpp"
#include "twirl/random.hpp"

namespace twirl {

/// One phase-estimation experiment: M conjugate-momentum readouts k ~ N(-lambda, 1/(4t))
/// for an eigenstate with eigenvalue lambda.
struct QpeRun {
  double t = 0.0;
  /// The eigenvalue being estimated; kept for reporting and tests.
  double true_lambda = 0.0;
  std::vector<double> samples;
  /// Mean of the raw k readouts (centered at -lambda).
  double raw_mean = 0.0;
  /// -raw_mean.
  double estimate = 0.0;
  /// Sample standard deviation (M - 1 denominator) over sqrt(M).
  double stderr_ = 0.0;

  double lower(double sigmas = 5.0) const { return estimate - sigmas * stderr_; }
  double upper(double sigmas = 5.0) const { return estimate + sigmas * stderr_; }
};

/// Draw k ~ N(-lambda0, 1/(4t)); t must be positive.
double sample_k(double lambda0, double t, RandomStream& stream);

/// Samples M readouts for eigenvalue `eigen_index` (ascending order) of h.
/// Requires M >= 2 so that the standard error is defined.
QpeRun estimate_lambda(const HermitianOperator& h, Index eigen_index, double t, std::uint64_t shots,
                       std::uint64_t seed);

/// One run per eigenvalue, each on its own stream.
std::vector<QpeRun> resolve_spectrum(const HermitianOperator& h, double t, std::uint64_t shots, std::uint64_t seed);

/// True when the 5-sigma intervals of two runs are disjoint.
bool resolved(const QpeRun& a, const QpeRun& b, double sigmas = 5.0);

/// Readout law for a general input state. Only the eigenstate law is
/// derived by the construction this module emulates; the mixture law for
/// superpositions is an extension and must be requested explicitly.
enum class ReadoutLaw { kEigenstateOnly, kDerivedMixture };

/// k for input |psi>: eigen-index j is drawn with weight |<j|psi>|^2, then
/// k ~ N(-lambda_j, 1/(4t)). Throws PreconditionError unless `law` is
/// kDerivedMixture or psi is an eigenvector of h.
double sample_k_for_state(const HermitianOperator& h, const ComplexVector& psi, double t, RandomStream& stream,
                          ReadoutLaw law);

}  // namespace twirl

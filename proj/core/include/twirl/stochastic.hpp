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
#include <functional>
#include <optional>
#include <vector>

#include "twirl/distributions.hpp"
#include "twirl/linalg.hpp"
#include "twirl/quantum_channels.hpp"
#include "twirl/random.hpp"

namespace twirl {

/// S = sqrt(2 t ln(4 / eps)); requires t > 0 and 0 < eps < 4. ShotPlan requires eps < 1.
double cutoff(double t, double epsilon);

/// Parameters of the randomized Gaussian twirl with cutoff.
struct ShotPlan {
  double t = 0.0;
  double epsilon = 0.0;
  double cutoff = 0.0;
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  /// Test hook: every shot uses this s instead of a random draw.
  std::optional<double> forced_s;

  /// Plan with the cutoff derived from (t, epsilon).
  static ShotPlan make(double t, double epsilon, std::uint64_t shots, std::uint64_t seed);
  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// s ~ N(0, t) conditioned on |s| <= S. Rejection from N(0, t) when S >= sqrt(t);
/// for narrower windows, uniform proposals on [-S, S] accepted with e^{-s^2/2t}.
double sample_truncated_normal(double t, double cutoff, RandomStream& stream);

/// The s used by shot `shot_index` of `plan`.
double shot_time(const ShotPlan& plan, std::uint64_t shot_index);

struct ShotResult {
  DensityMatrix state;
  double s = 0.0;
};

/// One run of the sampler: draw s, return e^{-iHs} rho e^{iHs} and s.
ShotResult run_shot(const HermitianOperator& h, const DensityMatrix& rho, const ShotPlan& plan,
                    std::uint64_t shot_index);

/// Hamiltonian-simulation time spent per shot and in total.
struct CostLedger {
  std::vector<double> per_shot_times;
  double total_time = 0.0;
  double worst_case = 0.0;
  std::uint64_t shots = 0;

  double mean() const;
  /// Sample standard deviation of per-shot times over sqrt(shots).
  double standard_error() const;
};

/// Monte-Carlo mean of the Choi matrices of the sampled unitary conjugations.
class EmpiricalChannel {
 public:
  EmpiricalChannel(Index dim, ComplexMatrix mean_choi, std::uint64_t shots)
      : dim_(dim), mean_choi_(std::move(mean_choi)), shots_(shots) {}

  Index dim() const { return dim_; }
  std::uint64_t shots() const { return shots_; }
  ChoiMatrix choi() const { return ChoiMatrix(mean_choi_); }
  const ComplexMatrix& mean_choi() const { return mean_choi_; }

 private:
  Index dim_;
  ComplexMatrix mean_choi_;
  std::uint64_t shots_;
};

struct ChannelEstimate {
  EmpiricalChannel channel;
  CostLedger ledger;
};

struct StateEstimate {
  DensityMatrix state;
  CostLedger ledger;
};

/// Worker count for shot loops. Results do not depend on it.
struct Parallelism {
  unsigned threads = 1;

  /// Reads TWIRL_THREADS; unset or invalid means one thread.
  static Parallelism from_environment();
};

/// A sampled evolution time together with the simulation time it costs.
struct Draw {
  double s = 0.0;
  double cost = 0.0;
};

/// Shot index -> draw; must be a pure function of the index.
using ShotSampler = std::function<Draw(std::uint64_t)>;

/// Mean Choi matrix over `shots` draws. Shots are split into a fixed set of
/// contiguous chunks that depend only on `shots`; each chunk is summed in
/// index order and chunk sums are added in chunk order, so the result is
/// bit-identical for any thread count.
ChannelEstimate estimate_sampled_channel(const HermitianOperator& h, const ShotSampler& sampler,
                                         std::uint64_t shots, double worst_case,
                                         Parallelism parallelism = Parallelism::from_environment());

/// Mean of e^{-iHs} rho e^{iHs} over shots, with the same reduction order.
StateEstimate estimate_sampled_state(const HermitianOperator& h, const DensityMatrix& rho,
                                     const ShotSampler& sampler, std::uint64_t shots, double worst_case,
                                     Parallelism parallelism = Parallelism::from_environment());

/// Sampler for the randomized Gaussian twirl with cutoff.
ShotSampler gaussian_cutoff_sampler(const ShotPlan& plan);

ChannelEstimate estimate_channel(const HermitianOperator& h, const ShotPlan& plan,
                                 Parallelism parallelism = Parallelism::from_environment());

StateEstimate estimate_state(const HermitianOperator& h, const DensityMatrix& rho, const ShotPlan& plan,
                             Parallelism parallelism = Parallelism::from_environment());

/// sqrt(2/pi) (sqrt(t)/S) exp(-S^2/2t), capped at 1; bounds TV(truncated, N(0,t)).
double tv_bound(double t, double cutoff);

/// 1 - Z_{t,S}: the N(0, t) mass outside [-S, S], by Gauss-Legendre quadrature of the tail.
double tv_exact(double t, double cutoff);

/// Compound-Poisson draw: displacement s = sum of jumps, cost = sum of |jumps|.
struct CompoundDraw {
  double s = 0.0;
  double kick_time = 0.0;
  std::uint64_t jumps = 0;
};

CompoundDraw draw_compound_poisson(double rate_time, const CompoundBase& base, RandomStream& stream);

/// N ~ Poisson(rate_time), returns the sum of N base draws. Base variants
/// other than Dirac, FiniteMixture and Gaussian raise SpecError.
double sample_compound_poisson(double rate_time, const DistributionSpec& base, RandomStream& stream);

/// Converts a DistributionSpec to a compound base or throws SpecError.
CompoundBase as_compound_base(const DistributionSpec& base);

ShotSampler compound_poisson_sampler(double rate_time, const CompoundBase& base, std::uint64_t seed);

/// Monte-Carlo estimate of the compound-Poisson twirl; ledger costs are kick times.
ChannelEstimate estimate_compound_channel(const HermitianOperator& h, const CompoundBase& base, double t,
                                          std::uint64_t shots, std::uint64_t seed,
                                          Parallelism parallelism = Parallelism::from_environment());

/// One draw from any DistributionSpec (finite-atom Levy triplets included).
Draw draw_twirl_time(const DistributionSpec& dist, RandomStream& stream);

ShotSampler distribution_sampler(const DistributionSpec& dist, std::uint64_t seed);

struct ScalingRow {
  double t = 0.0;
  double cutoff = 0.0;
  double cutoff_over_sqrt_t = 0.0;
};

std::vector<ScalingRow> scaling_table(const std::vector<double>& ts, double epsilon);

/// Mean |s| over `draws` truncated-normal samples at (t, cutoff(t, eps)).
double mean_abs_truncated_draw(double t, double epsilon, std::uint64_t draws, std::uint64_t seed);

}  // namespace twirl

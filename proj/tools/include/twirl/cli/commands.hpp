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
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twirl/cli/config.hpp"
#include "twirl/stochastic.hpp"

namespace twirl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

inline constexpr const char* kMetricsHeader =
    "mode,t,epsilon,S,shots,total_sim_time,choi_distance_to_exact,tv_bound,wall_seconds";
inline constexpr const char* kBenchHeader = "t,epsilon,S,S_over_sqrt_t,mean_abs_s";
inline constexpr const char* kQpeHeader = "index,true_lambda,raw_mean,estimate,stderr,lower_5sigma,upper_5sigma,resolved";

/// Largest dimension for which the d^4 Choi comparison is computed.
inline constexpr Index kMaxChoiDim = 16;

/// Runs the exact channel (no sampler section) or the sampled estimator and
/// writes the final state and one metrics row.
int cmd_simulate(const RunConfig& config, std::ostream& out,
                 Parallelism parallelism = Parallelism::from_environment());

struct VerifyOptions {
  std::vector<Index> dims{2, 4, 8};
  int trials = 20;
  std::uint64_t seed = 1;
  /// Scales the multiplier diagonal by 0.9 before the CPTP check.
  bool inject_tp_fault = false;
};

int cmd_verify(const VerifyOptions& options, std::ostream& out);

struct BenchOptions {
  std::vector<double> ts{1.0, 10.0, 100.0, 1000.0};
  std::vector<double> epsilons{0.01};
  std::uint64_t draws = 10000;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> csv;
};

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);

struct QpeOptions {
  double t = 1.0;
  std::uint64_t shots = 10000;
  std::uint64_t seed = 1;
  std::optional<Index> eigen_index;
  std::optional<std::filesystem::path> csv;
};

int cmd_qpe(const RunConfig& config, const QpeOptions& options, std::ostream& out);

/// Calls `body` and maps any library error to kExitConfig with one "error: ..." line on `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace twirl::cli

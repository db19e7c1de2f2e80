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
#include <optional>
#include <string>

#include "twirl/distributions.hpp"
#include "twirl/errors.hpp"
#include "twirl/linalg.hpp"
#include "twirl/quantum_channels.hpp"

namespace twirl::cli {

/// Invalid run configuration. `location` is a dotted key path or file:line:column.
class ConfigError : public Error {
 public:
  ConfigError(std::string location, const std::string& message)
      : Error(location + ": " + message), location_(std::move(location)) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

struct SystemSpec {
  std::optional<int> qubits;
  std::optional<Index> dim;

  Index dimension() const { return qubits ? (Index{1} << *qubits) : dim.value_or(0); }
};

struct HamiltonianSource {
  enum class Kind { kInlinePauli, kPauliFile, kMatrixFile };
  Kind kind = Kind::kInlinePauli;
  std::string pauli_text;
  std::filesystem::path path;
};

struct StateSource {
  enum class Kind { kPlusAll, kMaximallyMixed, kBasisIndex, kFile };
  Kind kind = Kind::kPlusAll;
  Index basis_index = 0;
  std::filesystem::path path;
};

/// The twirling law as written in the config. Semigroup families (gaussian,
/// dirac, compound_poisson, levy) are given at unit time and advanced to
/// `t`; a mixture is a fixed law; a truncated Gaussian has variance t.
struct DistributionChoice {
  DistributionSpec unit_law = Gaussian{1.0};
  std::optional<double> cutoff;
};

struct EvolutionSpec {
  double t = 0.0;
  std::optional<double> epsilon;
  DistributionChoice distribution;
};

struct SamplerSpec {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

struct OutputSpec {
  std::filesystem::path state;
  std::filesystem::path metrics;
  /// When false the wall_seconds column is left empty so that repeated runs are byte-identical.
  bool wall_clock = true;
};

struct RunConfig {
  SystemSpec system;
  std::optional<HamiltonianSource> hamiltonian;
  std::optional<StateSource> initial_state;
  std::optional<EvolutionSpec> evolution;
  std::optional<SamplerSpec> sampler;
  std::optional<OutputSpec> outputs;
  std::filesystem::path base_dir = ".";
};

/// Command-line values that replace config-file values.
struct Overrides {
  std::optional<double> t;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> state_out;
  std::optional<std::filesystem::path> metrics_out;
  bool exact = false;
  bool no_wall_clock = false;
};

/// Parses JSON text; relative paths are resolved against `base_dir`.
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir,
                           const std::string& source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

void apply_overrides(RunConfig& config, const Overrides& overrides);

/// Checks the system/Hamiltonian invariants and that input files exist.
void validate_system(const RunConfig& config);

/// validate_system plus evolution, outputs and sampler requirements of `simulate`.
void validate_for_simulate(const RunConfig& config);

HermitianOperator load_hamiltonian(const RunConfig& config);
DensityMatrix load_initial_state(const RunConfig& config, Index d);

/// The law at the configured time t.
DistributionSpec law_at_time(const EvolutionSpec& evolution);

}  // namespace twirl::cli

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

#include "oracles.hpp"
#include "temp_dir.hpp"
#include "twirl/cli/config.hpp"
#include "twirl/cli/formats.hpp"

namespace twirl::cli {
namespace {

using twirl::testing::TempDir;

const char* kBase = R"({
  "system": {"qubits": 1},
  "hamiltonian": {"pauli": "1.0 Z"},
  "initial_state": "plus_all",
  "evolution": {"t": 1.0, "epsilon": 0.01, "distribution": {"type": "gaussian"}},
  "sampler": {"shots": 100, "seed": 3},
  "outputs": {"state": "state.txt", "metrics": "metrics.csv"}
})";

std::string location_of(const std::string& json, const std::filesystem::path& base = ".") {
  try {
    RunConfig c = parse_run_config(json, base);
    validate_for_simulate(c);
  } catch (const ConfigError& e) {
    return e.location();
  }
  return "<no error>";
}

TEST(Config, ParsesFullConfig) {
  TempDir dir;
  const RunConfig c = parse_run_config(kBase, dir.path());
  EXPECT_EQ(c.system.qubits, 1);
  EXPECT_EQ(c.system.dimension(), 2);
  EXPECT_EQ(c.hamiltonian->kind, HamiltonianSource::Kind::kInlinePauli);
  EXPECT_EQ(c.initial_state->kind, StateSource::Kind::kPlusAll);
  EXPECT_DOUBLE_EQ(c.evolution->t, 1.0);
  EXPECT_DOUBLE_EQ(*c.evolution->epsilon, 0.01);
  EXPECT_TRUE(std::holds_alternative<Gaussian>(c.evolution->distribution.unit_law));
  EXPECT_EQ(c.sampler->shots, 100u);
  EXPECT_EQ(c.outputs->state, dir.path() / "state.txt");
  EXPECT_TRUE(c.outputs->wall_clock);
  EXPECT_NO_THROW(validate_for_simulate(c));
  EXPECT_TRUE(load_hamiltonian(c).matrix() == oracle::pauli_z());
  EXPECT_LE(oracle::max_abs(load_initial_state(c, 2).matrix() - oracle::plus_state()), 1e-15);
}

TEST(Config, DistributionVariants) {
  auto law = [](const std::string& dist) {
    const std::string json = R"({"system":{"qubits":1},"evolution":{"t":2,"distribution":)" + dist + "}}";
    return parse_run_config(json, ".").evolution->distribution;
  };
  EXPECT_DOUBLE_EQ(std::get<Gaussian>(law(R"({"type":"gaussian","variance_rate":0.5})").unit_law).variance, 0.5);
  EXPECT_DOUBLE_EQ(*law(R"({"type":"truncated_gaussian","cutoff":1.5})").cutoff, 1.5);
  EXPECT_DOUBLE_EQ(std::get<Dirac>(law(R"({"type":"dirac","s0":0.3})").unit_law).s0, 0.3);
  EXPECT_EQ(std::get<FiniteMixture>(law(R"({"type":"mixture","atoms":[{"s":1,"p":0.5},{"s":-1,"p":0.5}]})").unit_law)
                .atoms.size(),
            2u);
  const auto cp = std::get<CompoundPoisson>(
      law(R"({"type":"compound_poisson","rate":2,"base":{"type":"gaussian","variance":1}})").unit_law);
  EXPECT_DOUBLE_EQ(cp.rate, 2.0);
  const auto lv = std::get<LevyTriplet>(
      law(R"({"type":"levy","sigma2":1,"gamma":0.5,"nu":[{"s":0.5,"w":1}],"compensated":true})").unit_law);
  EXPECT_TRUE(lv.compensated);
  EXPECT_DOUBLE_EQ(lv.nu[0].weight, 1.0);
}

TEST(Config, LawAtTime) {
  EvolutionSpec ev;
  ev.t = 2.0;
  ev.epsilon = 0.01;
  ev.distribution.unit_law = Gaussian{1.5};
  EXPECT_DOUBLE_EQ(std::get<Gaussian>(law_at_time(ev)).variance, 3.0);
  ev.distribution.unit_law = TruncatedGaussian{1.0, 1.0};
  const auto tg = std::get<TruncatedGaussian>(law_at_time(ev));
  EXPECT_DOUBLE_EQ(tg.variance, 2.0);
  EXPECT_NEAR(tg.cutoff, std::sqrt(4.0 * std::log(400.0)), 1e-12);
  ev.distribution.unit_law = CompoundPoisson{1.5, Dirac{1.0}};
  EXPECT_DOUBLE_EQ(std::get<CompoundPoisson>(law_at_time(ev)).rate, 3.0);
}

TEST(Config, StructuredDiagnostics) {
  EXPECT_EQ(location_of("{"), "<config>:byte 2");
  EXPECT_EQ(location_of("[]"), "<root>");
  EXPECT_EQ(location_of(R"({"sytem":{}})"), "sytem");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1,"dim":2}})"), "system");
  EXPECT_EQ(location_of(R"({"system":{"qubits":"one"}})"), "system.qubits");
  EXPECT_EQ(location_of(R"({"system":{"qubits":0}})"), "system.qubits");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"hamiltonian":{"pauli":"1 Z","matrix_file":"h"}})"), "hamiltonian");
  EXPECT_EQ(location_of(R"({"system":{"dim":2},"hamiltonian":{"pauli":"1 Z"}})"), "hamiltonian");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"hamiltonian":{"matrix_file":"missing.txt"}})"),
            "hamiltonian.matrix_file");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"evolution":{"t":1,"distribution":{"type":"cauchy"}}})"),
            "evolution.distribution.type");
  EXPECT_EQ(
      location_of(R"({"system":{"qubits":1},"evolution":{"t":1,"distribution":{"type":"mixture","atoms":[{"s":1,"p":0.3}]}}})"),
      "evolution.distribution");
  EXPECT_EQ(location_of(
                R"({"system":{"qubits":1},"evolution":{"t":1,"distribution":{"type":"mixture","atoms":[{"s":1}]}}})"),
            "evolution.distribution.atoms[0]");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"initial_state":"ghz"})"), "initial_state");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"sampler":{"shots":-3}})"), "sampler.shots");
  EXPECT_EQ(location_of(R"({"system":{"qubits":1},"outputs":{"wall_clock":"no"}})"), "outputs.wall_clock");
}

TEST(Config, SimulateRequirements) {
  TempDir dir;
  auto with = [&](const std::string& from, const std::string& to) {
    std::string s = kBase;
    s.replace(s.find(from), from.size(), to);
    return location_of(s, dir.path());
  };
  EXPECT_EQ(with(R"("epsilon": 0.01, )", ""), "evolution.epsilon");
  EXPECT_EQ(with(R"("t": 1.0)", R"("t": -1.0)"), "evolution.t");
  EXPECT_EQ(with(R"("epsilon": 0.01)", R"("epsilon": 1.5)"), "evolution.epsilon");
  EXPECT_EQ(with(R"("state.txt")", R"("no/such/dir/state.txt")"), "outputs.state");
  EXPECT_EQ(with(R"("initial_state": "plus_all")", R"("initial_state": {"file": "rho.txt"})"), "initial_state.file");
  EXPECT_EQ(with(R"("initial_state": "plus_all")", R"("initial_state": {"basis_index": 1})"), "<no error>");
}

TEST(Config, FilesResolveAgainstConfigDirectory) {
  TempDir dir;
  std::ostringstream hm;
  write_matrix(hm, oracle::pauli_x());
  dir.write("h.txt", hm.str());
  dir.write("h.pauli", "# x field\n1.0 X\n");
  std::ostringstream rho;
  write_matrix(rho, oracle::plus_state());
  dir.write("rho.txt", rho.str());
  const auto cfg_path = dir.write("run.json", R"({"system":{"dim":2},"hamiltonian":{"matrix_file":"h.txt"},
    "initial_state":{"file":"rho.txt"}})");
  const RunConfig c = load_run_config(cfg_path);
  EXPECT_TRUE(load_hamiltonian(c).matrix() == oracle::pauli_x());
  EXPECT_TRUE(load_initial_state(c, 2).matrix() == oracle::plus_state());

  const RunConfig p = parse_run_config(R"({"system":{"qubits":1},"hamiltonian":{"pauli_file":"h.pauli"}})", dir.path());
  EXPECT_TRUE(load_hamiltonian(p).matrix() == oracle::pauli_x());

  const RunConfig wrong = parse_run_config(R"({"system":{"dim":3},"hamiltonian":{"matrix_file":"h.txt"}})", dir.path());
  EXPECT_THROW(load_hamiltonian(wrong), ConfigError);
  const RunConfig basis = parse_run_config(R"({"system":{"qubits":1},"initial_state":{"basis_index":2}})", dir.path());
  EXPECT_THROW(load_initial_state(basis, 2), ConfigError);
}

TEST(Config, BadPauliSurfacesParseErrorWithLine) {
  const RunConfig c = parse_run_config(R"({"system":{"qubits":1},"hamiltonian":{"pauli":["1 Z","2 Q"]}})", ".");
  try {
    load_hamiltonian(c);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
}

TEST(Config, OverridesWin) {
  RunConfig c = parse_run_config(kBase, ".");
  Overrides o;
  o.t = 3.0;
  o.shots = 7;
  o.no_wall_clock = true;
  o.metrics_out = "m2.csv";
  apply_overrides(c, o);
  EXPECT_DOUBLE_EQ(c.evolution->t, 3.0);
  EXPECT_EQ(c.sampler->shots, 7u);
  EXPECT_EQ(c.sampler->seed, 3u);
  EXPECT_FALSE(c.outputs->wall_clock);
  EXPECT_EQ(c.outputs->metrics, "m2.csv");
  Overrides exact;
  exact.exact = true;
  apply_overrides(c, exact);
  EXPECT_FALSE(c.sampler.has_value());
}

}  // namespace
}  // namespace twirl::cli

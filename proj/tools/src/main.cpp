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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "twirl/cli/commands.hpp"
#include "twirl/cli/config.hpp"

namespace {

using namespace twirl::cli;

twirl::Parallelism threads_or_environment(unsigned threads) {
  if (threads == 0) return twirl::Parallelism::from_environment();
  return twirl::Parallelism{threads};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian twirling channels: exact evaluation, sampling and phase estimation"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  unsigned threads = 0;
  double t_flag = 0.0, eps_flag = 0.0;
  std::uint64_t shots_flag = 0, seed_flag = 0;
  std::string state_out, metrics_out;

  auto* simulate = app.add_subcommand("simulate", "evolve a state under the configured twirl and write metrics");
  simulate->add_option("-c,--config", config_path, "JSON run configuration")->required();
  auto* sim_t = simulate->add_option("--t", t_flag, "evolution time");
  auto* sim_eps = simulate->add_option("--epsilon", eps_flag, "diamond-norm accuracy target");
  auto* sim_shots = simulate->add_option("--shots", shots_flag, "number of sampled shots");
  auto* sim_seed = simulate->add_option("--seed", seed_flag, "sampler seed");
  simulate->add_flag("--exact", overrides.exact, "ignore the sampler section and apply the exact channel");
  auto* sim_state = simulate->add_option("--state-out", state_out, "output state file");
  auto* sim_metrics = simulate->add_option("--metrics-out", metrics_out, "output metrics CSV");
  simulate->add_flag("--no-wall-clock", overrides.no_wall_clock, "leave wall_seconds empty");
  simulate->add_option("--threads", threads, "worker threads (default: TWIRL_THREADS or 1)");

  VerifyOptions verify_opts;
  std::string fault;
  auto* verify = app.add_subcommand("verify", "run the oracle, semigroup, CPTP and quadrature checks");
  verify->add_option("--dims", verify_opts.dims, "dimensions to test")->delimiter(',');
  verify->add_option("--trials", verify_opts.trials, "random instances per dimension");
  verify->add_option("--seed", verify_opts.seed, "seed");
  verify->add_option("--inject-fault", fault, "fault hook; 'tp' scales multiplier diagonals by 0.9")
      ->check(CLI::IsMember({"tp"}));

  BenchOptions bench_opts;
  std::string bench_csv;
  auto* bench = app.add_subcommand("bench", "cutoff scaling table with asserted fast-forwarding checks");
  bench->add_option("--t", bench_opts.ts, "evolution times")->delimiter(',');
  bench->add_option("--epsilon", bench_opts.epsilons, "accuracy targets")->delimiter(',');
  bench->add_option("--draws", bench_opts.draws, "truncated-normal draws per row");
  bench->add_option("--seed", bench_opts.seed, "seed");
  auto* bench_csv_opt = bench->add_option("--csv", bench_csv, "also write the table to this file");

  QpeOptions qpe_opts;
  std::string qpe_config, qpe_csv;
  twirl::Index eigen_index = 0;
  auto* qpe = app.add_subcommand("qpe", "continuous-variable phase estimation of the Hamiltonian spectrum");
  qpe->add_option("-c,--config", qpe_config, "JSON configuration with system and hamiltonian")->required();
  auto* qpe_t = qpe->add_option("--t", qpe_opts.t, "twirl time");
  auto* qpe_shots = qpe->add_option("--shots", qpe_opts.shots, "readouts per eigenvalue");
  auto* qpe_seed = qpe->add_option("--seed", qpe_opts.seed, "seed");
  auto* qpe_index = qpe->add_option("--eigen-index", eigen_index, "estimate only this eigenvalue (ascending order)");
  auto* qpe_csv_opt = qpe->add_option("--csv", qpe_csv, "also write the rows to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  return run_guarded(
      [&]() -> int {
        if (simulate->parsed()) {
          if (*sim_t) overrides.t = t_flag;
          if (*sim_eps) overrides.epsilon = eps_flag;
          if (*sim_shots) overrides.shots = shots_flag;
          if (*sim_seed) overrides.seed = seed_flag;
          if (*sim_state) overrides.state_out = state_out;
          if (*sim_metrics) overrides.metrics_out = metrics_out;
          RunConfig config = load_run_config(config_path);
          apply_overrides(config, overrides);
          return cmd_simulate(config, std::cout, threads_or_environment(threads));
        }
        if (verify->parsed()) {
          verify_opts.inject_tp_fault = fault == "tp";
          return cmd_verify(verify_opts, std::cout);
        }
        if (bench->parsed()) {
          if (*bench_csv_opt) bench_opts.csv = bench_csv;
          return cmd_bench(bench_opts, std::cout, std::cerr);
        }
        const RunConfig config = load_run_config(qpe_config);
        // Flags win; otherwise fall back to the config's evolution and sampler sections.
        if (!*qpe_t && config.evolution && config.evolution->t > 0.0) qpe_opts.t = config.evolution->t;
        if (!*qpe_shots && config.sampler) qpe_opts.shots = config.sampler->shots;
        if (!*qpe_seed && config.sampler) qpe_opts.seed = config.sampler->seed;
        if (*qpe_index) qpe_opts.eigen_index = eigen_index;
        if (*qpe_csv_opt) qpe_opts.csv = qpe_csv;
        return cmd_qpe(config, qpe_opts, std::cout);
      },
      std::cerr);
}

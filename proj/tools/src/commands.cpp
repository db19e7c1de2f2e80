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

#include "twirl/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "twirl/cli/formats.hpp"
#include "twirl/cvqpe.hpp"
#include "twirl/random_matrices.hpp"
#include "twirl/twirling.hpp"

namespace twirl::cli {
namespace {

struct MetricsRow {
  std::string mode;
  std::string t;
  std::string epsilon;
  std::string cutoff;
  std::string shots;
  std::string total_sim_time;
  std::string choi_distance;
  std::string tv_bound;
  std::string wall_seconds;

  std::string line() const {
    return mode + "," + t + "," + epsilon + "," + cutoff + "," + shots + "," + total_sim_time + "," + choi_distance +
           "," + tv_bound + "," + wall_seconds;
  }
};

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(path.string(), "cannot open for writing");
  out << text;
  if (!out) throw ConfigError(path.string(), "write failed");
}

// A fixed law ignores t; every other family is the identity at t = 0.
bool trivial_at_zero(const EvolutionSpec& ev) {
  return ev.t == 0.0 && !std::holds_alternative<FiniteMixture>(ev.distribution.unit_law);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs_entry(a - b); }

}  // namespace

int cmd_simulate(const RunConfig& config, std::ostream& out, Parallelism parallelism) {
  validate_for_simulate(config);
  const HermitianOperator h = load_hamiltonian(config);
  const Index d = h.dim();
  const DensityMatrix rho = load_initial_state(config, d);
  const EvolutionSpec& ev = *config.evolution;
  const OutputSpec& outputs = *config.outputs;
  const bool sampled = config.sampler.has_value();
  const DistributionSpec& unit = ev.distribution.unit_law;
  const bool gaussian = std::holds_alternative<Gaussian>(unit);
  const bool truncated = std::holds_alternative<TruncatedGaussian>(unit);
  const bool compound = std::holds_alternative<CompoundPoisson>(unit);
  const bool choi_available = d <= kMaxChoiDim;

  const auto start = std::chrono::steady_clock::now();
  MetricsRow row;
  row.mode = !sampled ? "exact" : gaussian ? "gaussian_cutoff" : compound ? "compound_poisson" : "sampled_" + variant_name(unit);
  row.t = format_real(ev.t);
  if (ev.epsilon) row.epsilon = format_real(*ev.epsilon);
  if (sampled) row.shots = std::to_string(config.sampler->shots);

  ComplexMatrix state;
  if (trivial_at_zero(ev)) {
    state = rho.matrix();
    if ((gaussian && sampled) || truncated) {
      row.cutoff = format_real(0.0);
      row.tv_bound = format_real(0.0);
    }
    if (sampled) row.total_sim_time = format_real(0.0);
    if (choi_available) row.choi_distance = format_real(0.0);
  } else {
    const DistributionSpec law = law_at_time(ev);
    const TwirlChannel exact = exact_channel(h, law);
    if (const auto* tg = std::get_if<TruncatedGaussian>(&law)) {
      row.cutoff = format_real(tg->cutoff);
      row.tv_bound = format_real(tv_bound(tg->variance, tg->cutoff));
    }
    if (!sampled) {
      state = exact.apply(rho).matrix();
      if (choi_available) row.choi_distance = format_real(0.0);
    } else {
      const SamplerSpec& sp = *config.sampler;
      ShotSampler sampler;
      double worst_case = 0.0;
      if (const auto* g = std::get_if<Gaussian>(&law)) {
        const ShotPlan plan = ShotPlan::make(g->variance, *ev.epsilon, sp.shots, sp.seed);
        sampler = gaussian_cutoff_sampler(plan);
        worst_case = plan.cutoff;
        row.cutoff = format_real(plan.cutoff);
        row.tv_bound = format_real(tv_bound(g->variance, plan.cutoff));
      } else if (const auto* cp = std::get_if<CompoundPoisson>(&law)) {
        sampler = compound_poisson_sampler(cp->rate, cp->base, sp.seed);
      } else {
        sampler = distribution_sampler(law, sp.seed);
        if (const auto* tg = std::get_if<TruncatedGaussian>(&law)) worst_case = tg->cutoff;
      }
      const StateEstimate se = estimate_sampled_state(h, rho, sampler, sp.shots, worst_case, parallelism);
      state = se.state.matrix();
      row.total_sim_time = format_real(se.ledger.total_time);
      if (choi_available) {
        const ChannelEstimate ce = estimate_sampled_channel(h, sampler, sp.shots, worst_case, parallelism);
        row.choi_distance = format_real(choi_trace_distance(ce.channel.choi(), exact.choi()));
      }
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (outputs.wall_clock) row.wall_seconds = format_real(wall);

  write_matrix_file(outputs.state, state);
  write_text_file(outputs.metrics, std::string(kMetricsHeader) + "\n" + row.line() + "\n");
  out << "mode " << row.mode << ", dimension " << d << "\n";
  out << "state written to " << outputs.state.string() << "\n";
  out << "metrics written to " << outputs.metrics.string() << "\n";
  return kExitOk;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  if (options.trials < 1) throw ConfigError("trials", "must be at least 1");
  for (Index d : options.dims) {
    if (d < 1 || d > kMaxChoiDim) throw ConfigError("dims", "each dimension must lie in [1, 16]");
  }
  struct Check {
    const char* name;
    double tolerance;
  };
  static constexpr Check kChecks[] = {
      {"oracle", 1e-10}, {"semigroup", 1e-12}, {"cptp", 1e-10}, {"hs_quadrature", 1e-8}};
  static constexpr double kOracleTimes[] = {0.0, 0.1, 1.0, 10.0};

  out << std::left << std::setw(15) << "check" << std::setw(6) << "dim" << std::setw(8) << "trials" << std::setw(26)
      << "max_deviation" << std::setw(11) << "tolerance" << "status\n";
  bool all_ok = true;
  for (Index d : options.dims) {
    double worst[4] = {0.0, 0.0, 0.0, 0.0};
    bool cptp_ok = true;
    for (int trial = 0; trial < options.trials; ++trial) {
      RandomStream stream(options.seed, static_cast<std::uint64_t>(d) * 1000003u + static_cast<std::uint64_t>(trial),
                          StreamPurpose::kVerification);
      const HermitianOperator h(random_hermitian(d, stream, 2.0));
      const DensityMatrix rho = random_density(d, stream);

      const double t = kOracleTimes[trial % 4];
      worst[0] = std::max(worst[0], max_abs_diff(gaussian_evolution(h, rho, t).matrix(),
                                                 vectorized_oracle(h, rho, t).matrix()));

      const double t1 = 0.05 + 2.0 * stream.uniform();
      const double t2 = 0.05 + 2.0 * stream.uniform();
      const double rate = 0.5 + stream.uniform();
      const CompoundBase base = Gaussian{1.0};
      const SchurMultiplier g1 = exact_channel(h, Gaussian{t1}).multiplier();
      const SchurMultiplier g2 = exact_channel(h, Gaussian{t2}).multiplier();
      const SchurMultiplier g12 = exact_channel(h, Gaussian{t1 + t2}).multiplier();
      const SchurMultiplier c1 = exact_channel(h, CompoundPoisson{rate * t1, base}).multiplier();
      const SchurMultiplier c2 = exact_channel(h, CompoundPoisson{rate * t2, base}).multiplier();
      const SchurMultiplier c12 = exact_channel(h, CompoundPoisson{rate * (t1 + t2), base}).multiplier();
      worst[1] = std::max(worst[1], max_abs_diff(g1.matrix().cwiseProduct(g2.matrix()), g12.matrix()));
      worst[1] = std::max(worst[1], max_abs_diff(c1.matrix().cwiseProduct(c2.matrix()), c12.matrix()));

      for (const SchurMultiplier* m : {&g1, &c1}) {
        ComplexMatrix mm = m->matrix();
        if (options.inject_tp_fault) mm.diagonal() *= 0.9;
        const CptpReport r = cptp_check(mm, kStatisticalPsdTolerance, kChecks[2].tolerance);
        worst[2] = std::max({worst[2], r.max_diag_deviation, std::max(0.0, -r.min_eigenvalue)});
        cptp_ok = cptp_ok && r.ok();
      }

      const double t_hs = 0.1 + 3.9 * stream.uniform();
      worst[3] = std::max(worst[3], hs_quadrature_check(h, t_hs, 64));
    }
    for (int c = 0; c < 4; ++c) {
      const bool ok = c == 2 ? cptp_ok : worst[c] <= kChecks[c].tolerance;
      all_ok = all_ok && ok;
      std::ostringstream tol;
      tol << kChecks[c].tolerance;
      out << std::left << std::setw(15) << kChecks[c].name << std::setw(6) << d << std::setw(8) << options.trials
          << std::setw(26) << format_real(worst[c]) << std::setw(11) << tol.str() << (ok ? "pass" : "FAIL") << "\n";
    }
  }
  out << (all_ok ? "all checks passed" : "verification FAILED") << "\n";
  return all_ok ? kExitOk : kExitFailure;
}

int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  if (options.ts.empty() || options.epsilons.empty()) throw ConfigError("bench", "t and epsilon grids must be nonempty");
  for (double t : options.ts) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("ts", "every t must be positive and finite");
  }
  for (double e : options.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilons", "every epsilon must lie in (0, 1)");
  }
  if (options.draws < 2) throw ConfigError("draws", "must be at least 2");

  std::ostringstream csv;
  csv << kBenchHeader << "\n";
  bool ok = true;
  std::vector<double> ratio_per_eps;
  for (std::size_t ei = 0; ei < options.epsilons.size(); ++ei) {
    const double eps = options.epsilons[ei];
    const double expected = std::sqrt(2.0 * std::log(4.0 / eps));
    const std::vector<ScalingRow> rows = scaling_table(options.ts, eps);
    std::vector<double> mean_abs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const ScalingRow& r = rows[i];
      const double m = mean_abs_truncated_draw(r.t, eps, options.draws, options.seed + 7919u * ei + i);
      mean_abs.push_back(m);
      csv << format_real(r.t) << "," << format_real(eps) << "," << format_real(r.cutoff) << ","
          << format_real(r.cutoff_over_sqrt_t) << "," << format_real(m) << "\n";
      if (std::abs(r.cutoff_over_sqrt_t - expected) > 1e-12 * expected) {
        err << "assertion failed: S/sqrt(t) at t=" << r.t << ", epsilon=" << eps << " is " << r.cutoff_over_sqrt_t
            << ", expected " << expected << "\n";
        ok = false;
      }
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double observed = mean_abs[i] / mean_abs[i - 1];
      const double predicted = std::sqrt(rows[i].t / rows[i - 1].t);
      if (std::abs(observed / predicted - 1.0) > 0.05) {
        err << "assertion failed: mean |s| ratio between t=" << rows[i - 1].t << " and t=" << rows[i].t << " is "
            << observed << ", expected " << predicted << " within 5%\n";
        ok = false;
      }
    }
    ratio_per_eps.push_back(expected);
  }
  for (std::size_t i = 1; i < options.epsilons.size(); ++i) {
    const bool increasing = options.epsilons[i] > options.epsilons[i - 1];
    const bool decreasing = options.epsilons[i] < options.epsilons[i - 1];
    if ((increasing && !(ratio_per_eps[i] < ratio_per_eps[i - 1])) ||
        (decreasing && !(ratio_per_eps[i] > ratio_per_eps[i - 1]))) {
      err << "assertion failed: S/sqrt(t) is not monotone decreasing in epsilon\n";
      ok = false;
    }
  }
  if (options.csv) write_text_file(*options.csv, csv.str());
  out << csv.str();
  return ok ? kExitOk : kExitFailure;
}

int cmd_qpe(const RunConfig& config, const QpeOptions& options, std::ostream& out) {
  validate_system(config);
  if (!(options.t > 0.0) || !std::isfinite(options.t)) throw ConfigError("t", "must be positive and finite");
  if (options.shots < 2) throw PreconditionError("qpe: the standard error needs M >= 2 samples, got M = " +
                                                 std::to_string(options.shots));
  const HermitianOperator h = load_hamiltonian(config);
  std::vector<QpeRun> runs;
  std::vector<Index> indices;
  if (options.eigen_index) {
    if (*options.eigen_index >= h.dim()) throw ConfigError("eigen_index", "out of range for the system");
    runs.push_back(estimate_lambda(h, *options.eigen_index, options.t, options.shots, options.seed));
    indices.push_back(*options.eigen_index);
  } else {
    runs = resolve_spectrum(h, options.t, options.shots, options.seed);
    for (Index j = 0; j < h.dim(); ++j) indices.push_back(j);
  }
  std::ostringstream csv;
  csv << kQpeHeader << "\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const QpeRun& r = runs[i];
    // An eigenvalue is resolved when its interval is disjoint from its neighbours'.
    bool separated = true;
    if (i > 0) separated = separated && resolved(runs[i - 1], r);
    if (i + 1 < runs.size()) separated = separated && resolved(r, runs[i + 1]);
    csv << indices[i] << "," << format_real(r.true_lambda) << "," << format_real(r.raw_mean) << ","
        << format_real(r.estimate) << "," << format_real(r.stderr_) << "," << format_real(r.lower()) << ","
        << format_real(r.upper()) << "," << (separated ? "true" : "false") << "\n";
  }
  if (options.csv) write_text_file(*options.csv, csv.str());
  out << csv.str();
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace twirl::cli

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

#include "twirl/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "twirl/errors.hpp"
#include "twirl/quadrature.hpp"

namespace twirl {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::uint64_t kShotsPerChunk = 1024;
constexpr std::uint64_t kMaxChunks = 64;

struct ChunkRange {
  std::uint64_t begin;
  std::uint64_t end;
};

std::vector<ChunkRange> partition_shots(std::uint64_t shots) {
  const std::uint64_t chunks =
      std::clamp<std::uint64_t>((shots + kShotsPerChunk - 1) / kShotsPerChunk, 1, kMaxChunks);
  std::vector<ChunkRange> out(chunks);
  for (std::uint64_t c = 0; c < chunks; ++c) out[c] = {c * shots / chunks, (c + 1) * shots / chunks};
  return out;
}

// Runs body(chunk_index) for every chunk on up to `threads` workers.
template <typename Body>
void for_each_chunk(std::size_t chunks, unsigned threads, Body&& body) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (workers == 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::size_t c = next++; c < chunks; c = next++) body(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

CostLedger finish_ledger(std::vector<double> costs, double worst_case) {
  CostLedger ledger;
  ledger.shots = costs.size();
  double total = 0.0;
  double observed_max = 0.0;
  for (double c : costs) {
    total += c;
    observed_max = std::max(observed_max, c);
  }
  ledger.total_time = total;
  ledger.worst_case = std::max(worst_case, observed_max);
  ledger.per_shot_times = std::move(costs);
  return ledger;
}

void require_positive_time(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << what << ": t must be positive and finite, got " << t;
    throw DomainError(os.str());
  }
}

double pick_atom(const std::vector<Atom>& atoms, RandomStream& stream) {
  const double u = stream.uniform();
  double cdf = 0.0;
  for (const Atom& a : atoms) {
    cdf += a.probability;
    if (u < cdf) return a.s;
  }
  return atoms.back().s;
}

double draw_base(const CompoundBase& base, RandomStream& stream) {
  return std::visit(overloaded{
                        [](const Dirac& d) { return d.s0; },
                        [&stream](const FiniteMixture& m) { return pick_atom(m.atoms, stream); },
                        [&stream](const Gaussian& g) { return stream.normal(0.0, std::sqrt(g.variance)); },
                    },
                    base);
}

}  // namespace

double cutoff(double t, double epsilon) {
  require_positive_time(t, "cutoff");
  // The formula needs ln(4/eps) > 0; Algorithm plans further restrict eps to (0, 1).
  if (!(epsilon > 0.0 && epsilon < 4.0)) {
    std::ostringstream os;
    os << "cutoff: epsilon must lie in (0, 4), got " << epsilon;
    throw DomainError(os.str());
  }
  return std::sqrt(2.0 * t * std::log(4.0 / epsilon));
}

ShotPlan ShotPlan::make(double t, double epsilon, std::uint64_t shots, std::uint64_t seed) {
  ShotPlan plan;
  plan.t = t;
  plan.epsilon = epsilon;
  plan.cutoff = twirl::cutoff(t, epsilon);
  plan.shots = shots;
  plan.seed = seed;
  plan.validate();
  return plan;
}

void ShotPlan::validate() const {
  require_positive_time(t, "ShotPlan");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("ShotPlan: epsilon must lie in (0, 1)");
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("ShotPlan: cutoff must be positive");
  if (shots < 1) throw DomainError("ShotPlan: at least one shot is required");
}

double sample_truncated_normal(double t, double cutoff, RandomStream& stream) {
  require_positive_time(t, "sample_truncated_normal");
  if (!(cutoff > 0.0)) throw DomainError("sample_truncated_normal: cutoff must be positive");
  const double sd = std::sqrt(t);
  if (cutoff >= sd) {
    for (;;) {
      const double s = stream.normal(0.0, sd);
      if (std::abs(s) <= cutoff) return s;
    }
  }
  const double inv2t = 0.5 / t;
  for (;;) {
    const double s = cutoff * (2.0 * stream.uniform() - 1.0);
    if (stream.uniform() < std::exp(-s * s * inv2t)) return s;
  }
}

double shot_time(const ShotPlan& plan, std::uint64_t shot_index) {
  if (plan.forced_s) return *plan.forced_s;
  RandomStream stream(plan.seed, shot_index, StreamPurpose::kGaussianShot);
  return sample_truncated_normal(plan.t, plan.cutoff, stream);
}

ShotResult run_shot(const HermitianOperator& h, const DensityMatrix& rho, const ShotPlan& plan,
                    std::uint64_t shot_index) {
  plan.validate();
  if (h.dim() != rho.dim()) throw ShapeError("run_shot: Hamiltonian and state dimensions differ");
  const double s = shot_time(plan, shot_index);
  const ComplexMatrix u = unitary_propagator(h.spectrum(), s);
  return {make_channel_output(u * rho.matrix() * u.adjoint(), rho.certified()), s};
}

double CostLedger::mean() const { return shots == 0 ? 0.0 : total_time / static_cast<double>(shots); }

double CostLedger::standard_error() const {
  if (shots < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double c : per_shot_times) ss += (c - m) * (c - m);
  const double var = ss / static_cast<double>(shots - 1);
  return std::sqrt(var / static_cast<double>(shots));
}

Parallelism Parallelism::from_environment() {
  Parallelism p;
  if (const char* env = std::getenv("TWIRL_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) p.threads = static_cast<unsigned>(std::min<long>(n, 256));
    } catch (const std::exception&) {
      // Malformed values fall back to one thread.
    }
  }
  return p;
}

ChannelEstimate estimate_sampled_channel(const HermitianOperator& h, const ShotSampler& sampler,
                                         std::uint64_t shots, double worst_case, Parallelism parallelism) {
  if (shots < 1) throw DomainError("estimate_sampled_channel: at least one shot is required");
  const Index d = h.dim();
  const Index d2 = d * d;
  const std::vector<ChunkRange> chunks = partition_shots(shots);
  std::vector<ComplexMatrix> partial(chunks.size());
  std::vector<double> costs(shots);
  for_each_chunk(chunks.size(), parallelism.threads, [&](std::size_t c) {
    ComplexMatrix acc = ComplexMatrix::Zero(d2, d2);
    ComplexVector w(d2);
    for (std::uint64_t i = chunks[c].begin; i < chunks[c].end; ++i) {
      const Draw draw = sampler(i);
      costs[i] = draw.cost;
      const ComplexMatrix u = unitary_propagator(h.spectrum(), draw.s);
      // Choi of rho -> U rho U^dagger is |w><w| with w[(i,a)] = U_{ai}.
      for (Index col = 0; col < d; ++col)
        for (Index row = 0; row < d; ++row) w(col * d + row) = u(row, col);
      acc.noalias() += w * w.adjoint();
    }
    partial[c] = std::move(acc);
  });
  ComplexMatrix total = ComplexMatrix::Zero(d2, d2);
  for (const ComplexMatrix& p : partial) total += p;
  total /= static_cast<double>(shots);
  return {EmpiricalChannel(d, std::move(total), shots), finish_ledger(std::move(costs), worst_case)};
}

StateEstimate estimate_sampled_state(const HermitianOperator& h, const DensityMatrix& rho,
                                     const ShotSampler& sampler, std::uint64_t shots, double worst_case,
                                     Parallelism parallelism) {
  if (shots < 1) throw DomainError("estimate_sampled_state: at least one shot is required");
  if (h.dim() != rho.dim()) throw ShapeError("estimate_sampled_state: Hamiltonian and state dimensions differ");
  const Index d = h.dim();
  const SpectralDecomposition& spec = h.spectrum();
  // In the eigenbasis each shot only rephases entries: O(d^2) per shot instead of two products.
  const ComplexMatrix rotated = spec.eigenvectors.adjoint() * rho.matrix() * spec.eigenvectors;
  const std::vector<ChunkRange> chunks = partition_shots(shots);
  std::vector<ComplexMatrix> partial(chunks.size());
  std::vector<double> costs(shots);
  for_each_chunk(chunks.size(), parallelism.threads, [&](std::size_t c) {
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    ComplexVector phase(d);
    for (std::uint64_t i = chunks[c].begin; i < chunks[c].end; ++i) {
      const Draw draw = sampler(i);
      costs[i] = draw.cost;
      for (Index j = 0; j < d; ++j) phase(j) = std::polar(1.0, -spec.eigenvalues(j) * draw.s);
      for (Index k = 0; k < d; ++k) {
        const Complex ck = std::conj(phase(k));
        for (Index j = 0; j < d; ++j) acc(j, k) += phase(j) * ck * rotated(j, k);
      }
    }
    partial[c] = std::move(acc);
  });
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const ComplexMatrix& p : partial) total += p;
  total /= static_cast<double>(shots);
  ComplexMatrix out = spec.eigenvectors * total * spec.eigenvectors.adjoint();
  return {make_channel_output(std::move(out), rho.certified()), finish_ledger(std::move(costs), worst_case)};
}

ShotSampler gaussian_cutoff_sampler(const ShotPlan& plan) {
  plan.validate();
  return [plan](std::uint64_t i) {
    const double s = shot_time(plan, i);
    return Draw{s, std::abs(s)};
  };
}

ChannelEstimate estimate_channel(const HermitianOperator& h, const ShotPlan& plan, Parallelism parallelism) {
  return estimate_sampled_channel(h, gaussian_cutoff_sampler(plan), plan.shots, plan.cutoff, parallelism);
}

StateEstimate estimate_state(const HermitianOperator& h, const DensityMatrix& rho, const ShotPlan& plan,
                             Parallelism parallelism) {
  return estimate_sampled_state(h, rho, gaussian_cutoff_sampler(plan), plan.shots, plan.cutoff, parallelism);
}

double tv_bound(double t, double cutoff) {
  require_positive_time(t, "tv_bound");
  if (!(cutoff > 0.0)) throw DomainError("tv_bound: cutoff must be positive");
  if (std::isinf(cutoff)) return 0.0;
  const double value = std::sqrt(2.0 / std::numbers::pi) * (std::sqrt(t) / cutoff) * std::exp(-cutoff * cutoff / (2.0 * t));
  return std::min(1.0, value);
}

double tv_exact(double t, double cutoff) {
  require_positive_time(t, "tv_exact");
  if (!(cutoff > 0.0)) throw DomainError("tv_exact: cutoff must be positive");
  if (std::isinf(cutoff)) return 0.0;
  // Tail mass 2 int_a^inf phi(x) dx with a = S / sqrt(t); beyond a + 40 it is below 1e-300.
  const double a = cutoff / std::sqrt(t);
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double tail = integrate_composite([&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, a,
                                          a + 40.0, 40, gauss_legendre_64());
  return std::min(1.0, 2.0 * tail);
}

CompoundDraw draw_compound_poisson(double rate_time, const CompoundBase& base, RandomStream& stream) {
  if (!(rate_time >= 0.0) || !std::isfinite(rate_time))
    throw DomainError("draw_compound_poisson: rate_time must be finite and nonnegative");
  CompoundDraw out;
  out.jumps = stream.poisson(rate_time);
  for (std::uint64_t j = 0; j < out.jumps; ++j) {
    const double x = draw_base(base, stream);
    out.s += x;
    out.kick_time += std::abs(x);
  }
  return out;
}

CompoundBase as_compound_base(const DistributionSpec& base) {
  CompoundBase out = std::visit(overloaded{
                                    [](const Dirac& d) -> CompoundBase { return d; },
                                    [](const FiniteMixture& m) -> CompoundBase { return m; },
                                    [](const Gaussian& g) -> CompoundBase { return g; },
                                    [](const auto&) -> CompoundBase {
                                      throw SpecError("compound Poisson base must be Dirac, FiniteMixture or Gaussian");
                                    },
                                },
                                base);
  validate_base(out);
  return out;
}

double sample_compound_poisson(double rate_time, const DistributionSpec& base, RandomStream& stream) {
  return draw_compound_poisson(rate_time, as_compound_base(base), stream).s;
}

ShotSampler compound_poisson_sampler(double rate_time, const CompoundBase& base, std::uint64_t seed) {
  validate_base(base);
  if (!(rate_time >= 0.0) || !std::isfinite(rate_time))
    throw DomainError("compound_poisson_sampler: rate_time must be finite and nonnegative");
  return [rate_time, base, seed](std::uint64_t i) {
    RandomStream stream(seed, i, StreamPurpose::kCompoundShot);
    const CompoundDraw d = draw_compound_poisson(rate_time, base, stream);
    return Draw{d.s, d.kick_time};
  };
}

ChannelEstimate estimate_compound_channel(const HermitianOperator& h, const CompoundBase& base, double t,
                                          std::uint64_t shots, std::uint64_t seed, Parallelism parallelism) {
  return estimate_sampled_channel(h, compound_poisson_sampler(t, base, seed), shots, 0.0, parallelism);
}

Draw draw_twirl_time(const DistributionSpec& dist, RandomStream& stream) {
  return std::visit(
      overloaded{
          [&](const Gaussian& g) {
            const double s = g.variance == 0.0 ? 0.0 : stream.normal(0.0, std::sqrt(g.variance));
            return Draw{s, std::abs(s)};
          },
          [&](const TruncatedGaussian& g) {
            const double s = sample_truncated_normal(g.variance, g.cutoff, stream);
            return Draw{s, std::abs(s)};
          },
          [](const Dirac& d) { return Draw{d.s0, std::abs(d.s0)}; },
          [&](const FiniteMixture& m) {
            const double s = pick_atom(m.atoms, stream);
            return Draw{s, std::abs(s)};
          },
          [&](const CompoundPoisson& c) {
            const CompoundDraw d = draw_compound_poisson(c.rate, c.base, stream);
            return Draw{d.s, d.kick_time};
          },
          [&](const LevyTriplet& l) {
            // Gaussian part plus drift, then a compound-Poisson sum over the atoms of nu.
            double continuous = l.sigma2 > 0.0 ? stream.normal(0.0, std::sqrt(l.sigma2)) : 0.0;
            continuous += l.gamma;
            double mass = 0.0;
            for (const LevyAtom& a : l.nu) {
              mass += a.weight;
              if (l.compensated && std::abs(a.s) <= 1.0) continuous -= a.weight * a.s;
            }
            double kicks = 0.0;
            double kick_time = 0.0;
            if (mass > 0.0) {
              std::vector<Atom> atoms;
              atoms.reserve(l.nu.size());
              for (const LevyAtom& a : l.nu) atoms.push_back({a.s, a.weight / mass});
              const std::uint64_t n = stream.poisson(mass);
              for (std::uint64_t j = 0; j < n; ++j) {
                const double x = pick_atom(atoms, stream);
                kicks += x;
                kick_time += std::abs(x);
              }
            }
            return Draw{continuous + kicks, std::abs(continuous) + kick_time};
          },
      },
      dist);
}

ShotSampler distribution_sampler(const DistributionSpec& dist, std::uint64_t seed) {
  validate(dist);
  return [dist, seed](std::uint64_t i) {
    RandomStream stream(seed, i, StreamPurpose::kTwirlShot);
    return draw_twirl_time(dist, stream);
  };
}

std::vector<ScalingRow> scaling_table(const std::vector<double>& ts, double epsilon) {
  std::vector<ScalingRow> rows;
  rows.reserve(ts.size());
  for (double t : ts) {
    const double s = cutoff(t, epsilon);
    rows.push_back({t, s, s / std::sqrt(t)});
  }
  return rows;
}

double mean_abs_truncated_draw(double t, double epsilon, std::uint64_t draws, std::uint64_t seed) {
  if (draws < 1) throw DomainError("mean_abs_truncated_draw: at least one draw is required");
  const double s_max = cutoff(t, epsilon);
  RandomStream stream(seed, 0, StreamPurpose::kBenchmark);
  double total = 0.0;
  for (std::uint64_t i = 0; i < draws; ++i) total += std::abs(sample_truncated_normal(t, s_max, stream));
  return total / static_cast<double>(draws);
}

}  // namespace twirl

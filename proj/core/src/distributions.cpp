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

#include "twirl/distributions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

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

void validate_mixture(const FiniteMixture& m) {
  if (m.atoms.empty()) throw SpecError("FiniteMixture: no atoms");
  double total = 0.0;
  for (const Atom& a : m.atoms) {
    if (!std::isfinite(a.s) || !std::isfinite(a.probability)) throw SpecError("FiniteMixture: non-finite atom");
    if (a.probability < 0.0) throw SpecError("FiniteMixture: negative probability");
    total += a.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "FiniteMixture: probabilities sum to " << total << ", expected 1";
    throw SpecError(os.str());
  }
}

Complex truncated_gaussian_char(const TruncatedGaussian& g, double omega) {
  // The law is symmetric, so the characteristic value is real:
  // int_{-S}^{S} e^{-s^2/2t} cos(omega s) ds / int_{-S}^{S} e^{-s^2/2t} ds.
  const double sd = std::sqrt(g.variance);
  const double span = 2.0 * g.cutoff;
  const int panels = 1 + static_cast<int>(std::max(std::abs(omega) * span / 30.0, span / (6.0 * sd)));
  const QuadratureRule& rule = gauss_legendre_64();
  const double inv2t = 0.5 / g.variance;
  const double num = integrate_composite(
      [&](double s) { return std::exp(-s * s * inv2t) * std::cos(omega * s); }, -g.cutoff, g.cutoff, panels, rule);
  const double den =
      integrate_composite([&](double s) { return std::exp(-s * s * inv2t); }, -g.cutoff, g.cutoff, panels, rule);
  return {num / den, 0.0};
}

}  // namespace

void validate_base(const CompoundBase& base) {
  std::visit(overloaded{
                 [](const Dirac& d) {
                   if (!std::isfinite(d.s0)) throw SpecError("CompoundPoisson: non-finite Dirac atom");
                   if (d.s0 == 0.0) throw SpecError("CompoundPoisson: base law has an atom at 0");
                 },
                 [](const FiniteMixture& m) {
                   validate_mixture(m);
                   for (const Atom& a : m.atoms)
                     if (a.s == 0.0 && a.probability > 0.0)
                       throw SpecError("CompoundPoisson: base law has an atom at 0");
                 },
                 [](const Gaussian& g) {
                   if (!(g.variance > 0.0) || !std::isfinite(g.variance))
                     throw SpecError("CompoundPoisson: Gaussian base needs positive variance");
                 },
             },
             base);
}

void validate(const DistributionSpec& spec) {
  std::visit(overloaded{
                 [](const Gaussian& g) {
                   if (!(g.variance >= 0.0) || !std::isfinite(g.variance))
                     throw SpecError("Gaussian: variance must be finite and nonnegative");
                 },
                 [](const TruncatedGaussian& g) {
                   if (!(g.variance > 0.0) || !std::isfinite(g.variance))
                     throw SpecError("TruncatedGaussian: variance must be positive");
                   if (!(g.cutoff > 0.0) || !std::isfinite(g.cutoff))
                     throw SpecError("TruncatedGaussian: cutoff must be positive");
                 },
                 [](const Dirac& d) {
                   if (!std::isfinite(d.s0)) throw SpecError("Dirac: non-finite atom");
                 },
                 [](const FiniteMixture& m) { validate_mixture(m); },
                 [](const CompoundPoisson& c) {
                   if (!(c.rate >= 0.0) || !std::isfinite(c.rate))
                     throw SpecError("CompoundPoisson: rate must be finite and nonnegative");
                   validate_base(c.base);
                 },
                 [](const LevyTriplet& l) {
                   if (!(l.sigma2 >= 0.0) || !std::isfinite(l.sigma2))
                     throw SpecError("LevyTriplet: sigma2 must be finite and nonnegative");
                   if (!std::isfinite(l.gamma)) throw SpecError("LevyTriplet: gamma must be finite");
                   for (const LevyAtom& a : l.nu) {
                     if (!std::isfinite(a.s) || !std::isfinite(a.weight))
                       throw SpecError("LevyTriplet: non-finite Levy atom");
                     if (a.s == 0.0) throw SpecError("LevyTriplet: Levy measure has an atom at 0");
                     if (!(a.weight > 0.0)) throw SpecError("LevyTriplet: Levy weights must be positive");
                   }
                 },
             },
             spec);
}

Complex char_minus_base(const CompoundBase& base, double omega) {
  return std::visit(overloaded{
                        [omega](const Dirac& d) { return std::polar(1.0, -omega * d.s0); },
                        [omega](const FiniteMixture& m) {
                          Complex sum{0.0, 0.0};
                          for (const Atom& a : m.atoms) sum += a.probability * std::polar(1.0, -omega * a.s);
                          return sum;
                        },
                        [omega](const Gaussian& g) { return Complex(std::exp(-0.5 * g.variance * omega * omega), 0.0); },
                    },
                    base);
}

Complex char_minus(const DistributionSpec& spec, double omega) {
  return std::visit(overloaded{
                        [omega](const Gaussian& g) { return Complex(std::exp(-0.5 * g.variance * omega * omega), 0.0); },
                        [omega](const TruncatedGaussian& g) { return truncated_gaussian_char(g, omega); },
                        [omega](const Dirac& d) { return std::polar(1.0, -omega * d.s0); },
                        [omega](const FiniteMixture& m) { return char_minus_base(CompoundBase{m}, omega); },
                        [omega](const CompoundPoisson& c) {
                          return std::exp(c.rate * (char_minus_base(c.base, omega) - 1.0));
                        },
                        [omega](const LevyTriplet& l) { return std::exp(levy_psi(l, omega)); },
                    },
                    spec);
}

Complex levy_psi(const LevyTriplet& triplet, double omega) {
  const Complex i{0.0, 1.0};
  Complex psi = -0.5 * triplet.sigma2 * omega * omega - i * triplet.gamma * omega;
  for (const LevyAtom& a : triplet.nu) {
    Complex term = std::polar(1.0, -omega * a.s) - 1.0;
    if (triplet.compensated && std::abs(a.s) <= 1.0) term += i * omega * a.s;
    psi += a.weight * term;
  }
  return psi;
}

DistributionSpec at_time(const DistributionSpec& spec, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("at_time: t must be finite and nonnegative");
  return std::visit(overloaded{
                        [t](const Gaussian& g) -> DistributionSpec { return Gaussian{g.variance * t}; },
                        [t](const Dirac& d) -> DistributionSpec { return Dirac{d.s0 * t}; },
                        [t](const CompoundPoisson& c) -> DistributionSpec { return CompoundPoisson{c.rate * t, c.base}; },
                        [t](const LevyTriplet& l) -> DistributionSpec {
                          LevyTriplet out = l;
                          out.sigma2 *= t;
                          out.gamma *= t;
                          for (LevyAtom& a : out.nu) a.weight *= t;
                          // Zero-weight atoms are not admissible; t = 0 is the trivial law.
                          if (t == 0.0) out.nu.clear();
                          return out;
                        },
                        [](const auto&) -> DistributionSpec {
                          throw SpecError("at_time: law has no convolution semigroup in this family");
                        },
                    },
                    spec);
}

double mean_abs_jump(const CompoundBase& base) {
  return std::visit(overloaded{
                        [](const Dirac& d) { return std::abs(d.s0); },
                        [](const FiniteMixture& m) {
                          double e = 0.0;
                          for (const Atom& a : m.atoms) e += a.probability * std::abs(a.s);
                          return e;
                        },
                        [](const Gaussian& g) { return std::sqrt(2.0 * g.variance / std::numbers::pi); },
                    },
                    base);
}

std::string variant_name(const DistributionSpec& spec) {
  return std::visit(overloaded{
                        [](const Gaussian&) { return std::string("gaussian"); },
                        [](const TruncatedGaussian&) { return std::string("truncated_gaussian"); },
                        [](const Dirac&) { return std::string("dirac"); },
                        [](const FiniteMixture&) { return std::string("mixture"); },
                        [](const CompoundPoisson&) { return std::string("compound_poisson"); },
                        [](const LevyTriplet&) { return std::string("levy"); },
                    },
                    spec);
}

std::string describe(const DistributionSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Gaussian& g) { os << "Gaussian(variance=" << g.variance << ")"; },
                 [&](const TruncatedGaussian& g) {
                   os << "TruncatedGaussian(variance=" << g.variance << ", cutoff=" << g.cutoff << ")";
                 },
                 [&](const Dirac& d) { os << "Dirac(s0=" << d.s0 << ")"; },
                 [&](const FiniteMixture& m) { os << "FiniteMixture(" << m.atoms.size() << " atoms)"; },
                 [&](const CompoundPoisson& c) { os << "CompoundPoisson(rate=" << c.rate << ")"; },
                 [&](const LevyTriplet& l) {
                   os << "LevyTriplet(sigma2=" << l.sigma2 << ", gamma=" << l.gamma << ", atoms=" << l.nu.size()
                      << (l.compensated ? ", compensated" : "") << ")";
                 },
             },
             spec);
  return os.str();
}

}  // namespace twirl

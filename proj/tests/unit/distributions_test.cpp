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

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "twirl/distributions.hpp"
#include "twirl/errors.hpp"
#include "twirl/random.hpp"

namespace twirl {
namespace {

constexpr double kPi = std::numbers::pi;

// E[e^{-i w s}] for N(0, v) restricted to [-a, a], by Simpson on the density.
Complex gaussian_char_by_integration(double v, double a, double w, bool renormalize) {
  auto density = [v](double s) { return std::exp(-s * s / (2.0 * v)) / std::sqrt(2.0 * kPi * v); };
  const Complex num =
      oracle::simpson([&](double s) { return Complex(density(s)) * std::exp(Complex(0.0, -w * s)); }, -a, a, 40000);
  if (!renormalize) return num;
  return num / oracle::simpson(density, -a, a, 40000);
}

// Poisson-weighted series sum_n e^{-r} r^n / n! phi^n.
Complex compound_by_series(double rate, Complex phi) {
  Complex sum = 0.0;
  double weight = std::exp(-rate);
  Complex power = 1.0;
  for (int n = 0; n < 200; ++n) {
    sum += weight * power;
    power *= phi;
    weight *= rate / (n + 1);
  }
  return sum;
}

TEST(CharMinus, GaussianNormalizationAndClosedForm) {
  EXPECT_EQ(char_minus(Gaussian{2.5}, 0.0), Complex(1.0));
  EXPECT_NEAR(std::abs(char_minus(Gaussian{1.0}, 2.0) - std::exp(-2.0)), 0.0, 1e-16);
  EXPECT_NEAR(char_minus(Gaussian{1.0}, 2.0).real(), 0.135335, 5e-7);
  for (double w : {0.3, 1.0, 2.0, 3.7}) {
    const Complex ref = gaussian_char_by_integration(1.0, 14.0, w, false);
    EXPECT_NEAR(std::abs(char_minus(Gaussian{1.0}, w) - ref), 0.0, 1e-12) << w;
  }
}

TEST(CharMinus, DiracAndMixture) {
  EXPECT_NEAR(std::abs(char_minus(Dirac{kPi}, 2.0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(char_minus(Dirac{0.7}, 1.3) - std::exp(Complex(0.0, -0.91))), 0.0, 1e-15);
  const FiniteMixture m{{{1.0, 0.25}, {-2.0, 0.75}}};
  const Complex expected = 0.25 * std::exp(Complex(0.0, -1.5)) + 0.75 * std::exp(Complex(0.0, 3.0));
  EXPECT_NEAR(std::abs(char_minus(m, 1.5) - expected), 0.0, 1e-15);
}

TEST(CharMinus, CompoundPoissonMatchesSeries) {
  const CompoundPoisson cp{1.0, Gaussian{1.0}};
  const Complex value = char_minus(cp, 2.0);
  EXPECT_NEAR(value.real(), std::exp(std::exp(-2.0) - 1.0), 1e-15);
  EXPECT_NEAR(value.real(), 0.4211927478, 1e-10);
  EXPECT_NEAR(std::abs(value - compound_by_series(1.0, std::exp(-2.0))), 0.0, 1e-14);
  const CompoundPoisson mixed{2.3, FiniteMixture{{{0.5, 0.4}, {-1.5, 0.6}}}};
  for (double w : {0.1, 1.0, 4.2}) {
    const Complex phi = char_minus_base(CompoundBase{FiniteMixture{{{0.5, 0.4}, {-1.5, 0.6}}}}, w);
    EXPECT_NEAR(std::abs(char_minus(mixed, w) - compound_by_series(2.3, phi)), 0.0, 1e-13);
  }
  EXPECT_NEAR(std::abs(char_minus(CompoundPoisson{1.0, Dirac{kPi / 2}}, 2.0) - std::exp(-2.0)), 0.0, 1e-15);
}

TEST(CharMinus, TruncatedGaussianMatchesIntegration) {
  for (double t : {0.5, 1.0, 4.0}) {
    for (double s : {0.5, 1.0, 2.0, 3.4616367652}) {
      const double cutoff = s * std::sqrt(t);
      for (double w : {0.0, 0.7, 2.0, 9.0, 40.0}) {
        const Complex ref = gaussian_char_by_integration(t, cutoff, w, true);
        EXPECT_NEAR(std::abs(char_minus(TruncatedGaussian{t, cutoff}, w) - ref), 0.0, 1e-10)
            << "t=" << t << " S=" << cutoff << " w=" << w;
      }
    }
  }
}

TEST(CharMinus, TruncatedApproachesGaussianForWideCutoff) {
  EXPECT_NEAR(std::abs(char_minus(TruncatedGaussian{1.0, 12.0}, 2.0) - std::exp(-2.0)), 0.0, 1e-12);
}

TEST(LevyPsi, Examples) {
  EXPECT_NEAR(std::abs(levy_psi(LevyTriplet{1.0, 0.0, {}, false}, 2.0) - Complex(-2.0)), 0.0, 1e-15);
  for (double w : {-3.0, 0.5, 7.0}) {
    EXPECT_NEAR(std::abs(levy_psi(LevyTriplet{0.0, 1.0, {}, false}, w) - Complex(0.0, -w)), 0.0, 1e-15);
  }
  const LevyTriplet atom{0.0, 0.0, {{2.0, 1.0}}, false};
  EXPECT_NEAR(std::abs(levy_psi(atom, 1.0) - (std::exp(Complex(0.0, -2.0)) - 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(std::exp(levy_psi(atom, 1.0)) - char_minus(CompoundPoisson{1.0, Dirac{2.0}}, 1.0)), 0.0,
              1e-15);
}

TEST(LevyPsi, CompensatorOnlyInsideUnitBall) {
  const double w = 1.3;
  const LevyTriplet inside{0.0, 0.0, {{0.5, 2.0}}, true};
  const Complex expected_inside = 2.0 * (std::exp(Complex(0.0, -w * 0.5)) - 1.0 + Complex(0.0, w * 0.5));
  EXPECT_NEAR(std::abs(levy_psi(inside, w) - expected_inside), 0.0, 1e-15);
  const LevyTriplet outside{0.0, 0.0, {{1.5, 2.0}}, true};
  EXPECT_NEAR(std::abs(levy_psi(outside, w) - 2.0 * (std::exp(Complex(0.0, -w * 1.5)) - 1.0)), 0.0, 1e-15);
}

TEST(LevyPsi, ZeroAtOriginAndContractive) {
  RandomStream stream(3, 0, StreamPurpose::kTest);
  for (int trial = 0; trial < 200; ++trial) {
    LevyTriplet l{2.0 * stream.uniform(), 4.0 * (stream.uniform() - 0.5), {}, trial % 2 == 0};
    const int atoms = trial % 4;
    for (int a = 0; a < atoms; ++a) l.nu.push_back({4.0 * (stream.uniform() - 0.5) + 1e-3, 0.1 + stream.uniform()});
    EXPECT_EQ(levy_psi(l, 0.0), Complex(0.0));
    const double w = 10.0 * (stream.uniform() - 0.5);
    EXPECT_LE(levy_psi(l, w).real(), 1e-15);
    EXPECT_NEAR(std::abs(char_minus(l, w) - std::exp(levy_psi(l, w))), 0.0, 1e-15);
  }
}

TEST(Validate, RejectsInvalidLaws) {
  EXPECT_THROW(validate(FiniteMixture{{{1.0, 0.5}, {2.0, 0.4}}}), SpecError);
  EXPECT_THROW(validate(FiniteMixture{{{1.0, 1.2}, {2.0, -0.2}}}), SpecError);
  EXPECT_THROW(validate(FiniteMixture{}), SpecError);
  EXPECT_NO_THROW(validate(FiniteMixture{{{1.0, 0.5}, {2.0, 0.5 + 1e-13}}}));
  EXPECT_THROW(validate(CompoundPoisson{1.0, Dirac{0.0}}), SpecError);
  EXPECT_THROW(validate(CompoundPoisson{1.0, FiniteMixture{{{0.0, 0.5}, {1.0, 0.5}}}}), SpecError);
  EXPECT_THROW(validate(CompoundPoisson{-1.0, Dirac{1.0}}), SpecError);
  EXPECT_THROW(validate(LevyTriplet{-0.1, 0.0, {}, false}), SpecError);
  EXPECT_THROW(validate(LevyTriplet{0.0, 0.0, {{0.0, 1.0}}, false}), SpecError);
  EXPECT_THROW(validate(LevyTriplet{0.0, 0.0, {{1.0, 0.0}}, false}), SpecError);
  EXPECT_THROW(validate(Gaussian{-1.0}), SpecError);
  EXPECT_THROW(validate(TruncatedGaussian{1.0, 0.0}), SpecError);
  EXPECT_NO_THROW(validate(LevyTriplet{1.0, -0.3, {{0.2, 0.5}}, true}));
}

TEST(AtTime, SemigroupFamilies) {
  EXPECT_DOUBLE_EQ(std::get<Gaussian>(at_time(Gaussian{2.0}, 3.0)).variance, 6.0);
  EXPECT_DOUBLE_EQ(std::get<Dirac>(at_time(Dirac{0.5}, 3.0)).s0, 1.5);
  EXPECT_DOUBLE_EQ(std::get<CompoundPoisson>(at_time(CompoundPoisson{2.0, Dirac{1.0}}, 0.25)).rate, 0.5);
  const LevyTriplet l = std::get<LevyTriplet>(at_time(LevyTriplet{1.0, 2.0, {{0.5, 1.0}}, true}, 2.0));
  EXPECT_DOUBLE_EQ(l.sigma2, 2.0);
  EXPECT_DOUBLE_EQ(l.gamma, 4.0);
  EXPECT_DOUBLE_EQ(l.nu[0].weight, 2.0);
  EXPECT_THROW(at_time(FiniteMixture{{{1.0, 1.0}}}, 1.0), SpecError);
  EXPECT_THROW(at_time(Gaussian{1.0}, -1.0), DomainError);
}

TEST(MeanAbsJump, Bases) {
  EXPECT_DOUBLE_EQ(mean_abs_jump(Dirac{-2.0}), 2.0);
  EXPECT_DOUBLE_EQ(mean_abs_jump(FiniteMixture{{{1.0, 0.5}, {-3.0, 0.5}}}), 2.0);
  const double ref = oracle::simpson([](double s) { return std::abs(s) * oracle::normal_pdf(s); }, -12.0, 12.0, 24000);
  EXPECT_NEAR(mean_abs_jump(Gaussian{1.0}), ref, 1e-10);
}

TEST(Describe, NamesVariants) {
  EXPECT_EQ(variant_name(Gaussian{1.0}), "gaussian");
  EXPECT_EQ(variant_name(LevyTriplet{}), "levy");
  EXPECT_NE(describe(CompoundPoisson{1.0, Dirac{1.0}}).find("1"), std::string::npos);
}

}  // namespace
}  // namespace twirl

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

#include <string>
#include <variant>
#include <vector>

#include "twirl/linalg.hpp"

namespace twirl {

// Classical laws of the twirling time s. Characteristic functions use the
// conjugate convention char_minus(omega) = E[exp(-i omega s)] throughout.

struct Gaussian {
  double variance = 0.0;
};

/// N(0, variance) conditioned on |s| <= cutoff.
struct TruncatedGaussian {
  double variance = 0.0;
  double cutoff = 0.0;
};

struct Dirac {
  double s0 = 0.0;
};

struct Atom {
  double s = 0.0;
  double probability = 0.0;
};

struct FiniteMixture {
  std::vector<Atom> atoms;
};

/// Jump laws admitted as the base of a compound Poisson law.
using CompoundBase = std::variant<Dirac, FiniteMixture, Gaussian>;

/// Sum of N ~ Poisson(rate) independent jumps drawn from `base`.
struct CompoundPoisson {
  double rate = 0.0;
  CompoundBase base;
};

struct LevyAtom {
  double s = 0.0;
  double weight = 0.0;
};

/// Levy-Khintchine data with a finitely supported Levy measure.
struct LevyTriplet {
  double sigma2 = 0.0;
  double gamma = 0.0;
  std::vector<LevyAtom> nu;
  /// Subtract i*omega*s on atoms with |s| <= 1.
  bool compensated = false;
};

using DistributionSpec =
    std::variant<Gaussian, TruncatedGaussian, Dirac, FiniteMixture, CompoundPoisson, LevyTriplet>;

/// Throws SpecError when the spec violates its invariants.
void validate(const DistributionSpec& spec);
/// Validation of a compound-Poisson jump law (no mass at 0).
void validate_base(const CompoundBase& base);

Complex char_minus(const DistributionSpec& spec, double omega);
Complex char_minus_base(const CompoundBase& base, double omega);

/// psi(omega) = -(sigma2/2) omega^2 - i gamma omega
///              + sum_j w_j (exp(-i omega s_j) - 1 + i omega s_j 1[|s_j| <= 1] compensated),
/// so that exp(psi) = char_minus of the law at unit time.
Complex levy_psi(const LevyTriplet& triplet, double omega);

/// The member at time t of the convolution semigroup through `spec`
/// (Gaussian, Dirac, CompoundPoisson, LevyTriplet). Throws SpecError for
/// laws that are not infinitely divisible in this family sense.
DistributionSpec at_time(const DistributionSpec& spec, double t);

/// E|X| for a compound-Poisson base law.
double mean_abs_jump(const CompoundBase& base);

std::string describe(const DistributionSpec& spec);
std::string variant_name(const DistributionSpec& spec);

}  // namespace twirl

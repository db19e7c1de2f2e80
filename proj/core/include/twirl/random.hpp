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
#include <random>

namespace twirl {

/// Purposes keep streams for different consumers of one seed disjoint.
enum class StreamPurpose : std::uint64_t {
  kGaussianShot = 1,
  kCompoundShot = 2,
  kTwirlShot = 3,
  kPhaseEstimation = 4,
  kBenchmark = 5,
  kTest = 6,
  kVerification = 7,
};

/// Counter-based bit generator: the n-th output is a SplitMix64 finalizer
/// applied to key + n * golden_gamma, so a stream is fully described by its
/// key and position. Satisfies UniformRandomBitGenerator.
class CounterEngine {
 public:
  using result_type = std::uint64_t;

  explicit CounterEngine(std::uint64_t key) : state_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Random stream keyed by (seed, index, purpose). Streams are reproducible
/// and independent of the order in which they are created, so shot i can be
/// evaluated on any thread.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose);

  /// Uniform on [0, 1).
  double uniform();
  double normal(double mean, double stddev);
  /// Inversion by sequential search for rate <= 30; std::poisson_distribution above.
  std::uint64_t poisson(double rate);

  CounterEngine& engine() { return engine_; }

 private:
  CounterEngine engine_;
  std::normal_distribution<double> standard_normal_{0.0, 1.0};
};

}  // namespace twirl

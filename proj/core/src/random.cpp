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

#include "twirl/random.hpp"

#include <cmath>

#include "twirl/errors.hpp"

namespace twirl {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose) {
  const auto p = static_cast<std::uint64_t>(purpose);
  return splitmix64(splitmix64(splitmix64(seed) ^ index) ^ (p * 0xd6e8feb86659fd93ULL));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index, StreamPurpose purpose)
    : engine_(stream_key(seed, index, purpose)) {}

// Top 53 bits, so the result is exactly representable and strictly below 1.
double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStream::normal(double mean, double stddev) { return mean + stddev * standard_normal_(engine_); }

std::uint64_t RandomStream::poisson(double rate) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("poisson: rate must be finite and nonnegative");
  if (rate == 0.0) return 0;
  if (rate > 30.0) {
    std::poisson_distribution<std::uint64_t> dist(rate);
    return dist(engine_);
  }
  const double u = uniform();
  double p = std::exp(-rate);
  double cdf = p;
  std::uint64_t k = 0;
  while (u >= cdf && p > 0.0) {
    ++k;
    p *= rate / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace twirl

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

#include <cstddef>
#include <vector>

namespace twirl {

/// Nodes and weights of an n-point Gaussian rule.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite rule for the weight e^{-x^2} on the real line (Golub-Welsch).
QuadratureRule gauss_hermite(int n);

/// Cached 64-point Gauss-Legendre rule.
const QuadratureRule& gauss_legendre_64();

/// Composite Gauss-Legendre integral of f over [a, b] split into `panels` equal pieces.
template <typename F>
auto integrate_composite(F&& f, double a, double b, int panels, const QuadratureRule& rule) {
  using R = decltype(f(a));
  R total{};
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double half = 0.5 * width;
    const double mid = lo + half;
    R panel{};
    for (std::size_t i = 0; i < rule.size(); ++i) panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * panel;
  }
  return total;
}

}  // namespace twirl

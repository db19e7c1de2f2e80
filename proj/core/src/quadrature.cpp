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

#include "twirl/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "twirl/errors.hpp"

namespace twirl {
namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric Jacobi matrix,
// weights are mu0 times the squared first eigenvector components.
template <typename OffDiag>
QuadratureRule golub_welsch(int n, double mu0, OffDiag&& off_diag) {
  if (n < 1) throw DomainError("quadrature: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = off_diag(k);
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  // Both weight functions are even: symmetrize to remove eigensolver noise.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  return golub_welsch(n, 2.0, [](int k) {
    const double kk = k;
    return kk / std::sqrt(4.0 * kk * kk - 1.0);
  });
}

QuadratureRule gauss_hermite(int n) {
  return golub_welsch(n, std::sqrt(std::numbers::pi), [](int k) { return std::sqrt(0.5 * k); });
}

const QuadratureRule& gauss_legendre_64() {
  static const QuadratureRule rule = gauss_legendre(64);
  return rule;
}

}  // namespace twirl

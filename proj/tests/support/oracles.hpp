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

// Reference implementations used only by the tests. They deliberately avoid
// the library's spectral machinery so that agreement means something.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "twirl/linalg.hpp"

namespace twirl::oracle {

inline ComplexMatrix pauli_i() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix plus_state() { return ComplexMatrix::Constant(2, 2, 0.5); }

// Hand-rolled Kronecker product.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// e^{-iHs} by Pade scaling-and-squaring, not by eigendecomposition.
inline ComplexMatrix propagator(const ComplexMatrix& h, double s) {
  const ComplexMatrix a = Complex(0.0, -s) * h;
  return a.exp();
}

inline ComplexMatrix conjugate(const ComplexMatrix& h, double s, const ComplexMatrix& rho) {
  const ComplexMatrix u = propagator(h, s);
  return u * rho * u.adjoint();
}

// Row-major superoperator of rho -> H rho - rho H.
inline ComplexMatrix commutator_super(const ComplexMatrix& h) {
  const ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
  return kron(h, id) - kron(id, h.transpose());
}

// rho(t) = unvec(expm(t G) vec(rho)) with a Pade exponential and a hand-written row-major vec.
inline ComplexMatrix evolve_by_generator(const ComplexMatrix& generator, const ComplexMatrix& rho, double t) {
  const Index d = rho.rows();
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  const ComplexVector w = ComplexMatrix(t * generator).exp() * v;
  ComplexMatrix out(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) out(i, j) = w(i * d + j);
  return out;
}

// Composite Simpson rule with n (even) intervals.
template <typename F>
auto simpson(F&& f, double a, double b, int n) {
  using R = decltype(f(a));
  const double h = (b - a) / n;
  R sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
  return sum * (h / 3.0);
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
inline double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

// Variance of N(0, t) conditioned on [-S, S].
inline double truncated_variance(double t, double s) {
  const double a = s / std::sqrt(t);
  const double z = 2.0 * normal_cdf(a) - 1.0;
  return t * (1.0 - 2.0 * a * normal_pdf(a) / z);
}

// E|s| for N(0, t) conditioned on [-S, S].
inline double truncated_mean_abs(double t, double s) {
  const double a = s / std::sqrt(t);
  const double z = 2.0 * normal_cdf(a) - 1.0;
  return std::sqrt(t) * 2.0 * (normal_pdf(0.0) - normal_pdf(a)) / z;
}

inline double truncated_cdf(double x, double t, double s) {
  const double sd = std::sqrt(t);
  const double lo = normal_cdf(-s / sd);
  return (normal_cdf(x / sd) - lo) / (normal_cdf(s / sd) - lo);
}

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// Choi matrix by definition: sum_ij |i><j| kron Phi(|i><j|).
inline ComplexMatrix choi_by_definition(Index d, const std::function<ComplexMatrix(const ComplexMatrix&)>& phi) {
  ComplexMatrix j = ComplexMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      ComplexMatrix e = ComplexMatrix::Zero(d, d);
      e(a, b) = 1.0;
      j += kron(e, phi(e));
    }
  }
  return j;
}

inline double trace_norm_hermitian(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace twirl::oracle

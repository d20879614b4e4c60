/*
 * Copyright 2026 The csimplex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef CSIMPLEX_TESTS_SUPPORT_HPP
#define CSIMPLEX_TESTS_SUPPORT_HPP

// Oracles and fixtures shared by the test binaries. Nothing here calls into
// the library code it is used to check.

#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "csimplex/models.hpp"
#include "csimplex/odeflow.hpp"

namespace testing {

using csimplex::Matrix;
using csimplex::Vector;

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Reference instances.
inline csimplex::MayOsterModel may2() {
  return csimplex::MayOsterModel(vec({0.5, 0.4}), mat2(1, 0.2, 0.3, 1));
}
inline csimplex::LeslieGowerModel leslie_gower2() {
  return csimplex::LeslieGowerModel(vec({1.3, 1.2}), mat2(1, 0.5, 0.4, 1));
}
inline csimplex::NeuralNetModel neural2(double gamma) {
  return csimplex::NeuralNetModel(vec({0.5, 0.4}), mat2(1, 0.2, 0.3, 1),
                                  csimplex::Transfer::softplus(gamma));
}
inline csimplex::MayOsterModel may1(double b, double a = 1.0) {
  Matrix A(1, 1);
  A << a;
  return csimplex::MayOsterModel(vec({b}), A);
}

/// Spectral radius of a 2x2 matrix from the quadratic formula.
inline double rho2x2(const Matrix& m) {
  const double tr = m(0, 0) + m(1, 1);
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const std::complex<double> disc = std::sqrt(std::complex<double>(tr * tr - 4.0 * det));
  return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

/// Five-point stencil derivative of the map, column by column.
template <class F>
Matrix fd5_jacobian(F f, const Vector& x, double h = 1e-4) {
  const Eigen::Index n = x.size();
  Matrix J(f(x).size(), n);
  for (Eigen::Index j = 0; j < n; ++j) {
    auto at = [&](double s) {
      Vector y = x;
      y[j] += s;
      return f(y);
    };
    J.col(j) = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
  }
  return J;
}

/// Random competitive LV map: B in [0.2, 0.6], A_ii = 1, A_ij in [0, 0.3].
inline csimplex::MayOsterModel random_may(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> b(0.2, 0.6), off(0.0, 0.3);
  Vector B(static_cast<Eigen::Index>(n));
  Matrix A(B.size(), B.size());
  for (Eigen::Index i = 0; i < B.size(); ++i) {
    B[i] = b(gen);
    for (Eigen::Index j = 0; j < B.size(); ++j) A(i, j) = i == j ? 1.0 : off(gen);
  }
  return csimplex::MayOsterModel(B, A);
}

/// Random competitive periodic LV system with strictly positive coefficients.
inline csimplex::PeriodicSystem random_periodic(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto series = [&](double base, double spread) {
    csimplex::FourierSeries s;
    s.constant = base;
    s.cos = {spread * (2.0 * u(gen) - 1.0)};
    s.sin = {spread * (2.0 * u(gen) - 1.0)};
    return s;
  };
  std::vector<csimplex::FourierSeries> B, A;
  for (std::size_t i = 0; i < n; ++i) B.push_back(series(0.5 + u(gen), 0.2));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      A.push_back(i == j ? series(1.0, 0.3) : series(0.1 + 0.4 * u(gen), 0.05));
    }
  }
  return csimplex::PeriodicSystem(std::move(B), std::move(A));
}

/// Logistic u' = r u (1 - u / K) closed form.
inline double logistic(double r, double K, double u0, double t) {
  return K / (1.0 + (K / u0 - 1.0) * std::exp(-r * t));
}

}  // namespace testing

#endif  // CSIMPLEX_TESTS_SUPPORT_HPP
